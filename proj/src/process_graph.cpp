#include "condsplit/process_graph.hpp"

#include <algorithm>
#include <json.hpp>
#include <optional>
#include <set>

#include "condsplit/errors.hpp"
#include "condsplit/utf8.hpp"

namespace condsplit {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string clause_text(const std::string& text, const ClauseSpan& span) {
  return utf8::slice(text, span.start, span.end);
}

std::string dot_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (c == '"' || c == '\\') out.push_back('\\');
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out.push_back(c);
  }
  return out;
}

// "s12.cond" -> (12, rank of the role); unknown shapes sort last by text.
std::pair<std::size_t, int> id_key(std::string_view id) {
  std::size_t index = 0;
  std::size_t i = 1;
  if (id.empty() || id[0] != 's') return {SIZE_MAX, 0};
  for (; i < id.size() && id[i] >= '0' && id[i] <= '9'; ++i) index = index * 10 + (id[i] - '0');
  const std::string_view role = i < id.size() ? id.substr(i) : std::string_view{};
  const int rank = role == ".step" ? 0 : role == ".cond" ? 1 : role == ".res" ? 2 : 3;
  return {index, rank};
}

}  // namespace

std::string_view to_string(NodeKind kind) { return kind == NodeKind::Step ? "step" : "condition"; }

std::string_view to_string(EdgeStyle style) { return style == EdgeStyle::Solid ? "solid" : "dashed"; }

const ProcessNode* ProcessGraph::find(std::string_view id) const {
  for (const auto& node : nodes)
    if (node.id == id) return &node;
  return nullptr;
}

ProcessGraph build_graph(std::span<const GraphInput> inputs) {
  ProcessGraph graph;
  std::optional<std::string> tail;
  auto attach = [&](const std::string& id) {
    if (tail) graph.edges.push_back({*tail, id, EdgeStyle::Solid});
    tail = id;
  };

  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const GraphInput& input = inputs[i];
    const SplitResult& r = input.result;
    const std::string prefix = "s" + std::to_string(i);
    if (r.sentence_class == SentenceClass::NoCondition || !r.condition) {
      graph.nodes.push_back({prefix + ".step", NodeKind::Step, input.text, false});
      attach(graph.nodes.back().id);
      continue;
    }

    const std::string cond_id = prefix + ".cond";
    graph.nodes.push_back({cond_id, NodeKind::Condition, clause_text(input.text, *r.condition), false});
    attach(cond_id);
    if (!r.resultant) continue;

    const bool action = r.resultant->label == Label::Action;
    const std::string res_id = prefix + ".res";
    graph.nodes.push_back({res_id, NodeKind::Step, clause_text(input.text, *r.resultant), !action});
    graph.edges.push_back({cond_id, res_id, EdgeStyle::Dashed});
    // Actions continue the flow; consequences end their branch.
    if (action) tail = res_id;
  }
  return graph;
}

std::vector<std::string> check_graph(const ProcessGraph& graph) {
  std::vector<std::string> errors;
  std::set<std::string_view> ids;
  for (const auto& node : graph.nodes)
    if (!ids.insert(node.id).second) errors.push_back("duplicate node id " + node.id);
  for (const auto& edge : graph.edges) {
    const ProcessNode* from = graph.find(edge.from);
    if (!from) errors.push_back("edge source " + edge.from + " does not exist");
    if (!graph.find(edge.to)) errors.push_back("edge target " + edge.to + " does not exist");
    if (edge.style == EdgeStyle::Dashed && from && from->kind != NodeKind::Condition)
      errors.push_back("dashed edge " + edge.from + " -> " + edge.to + " leaves a step node");
  }
  return errors;
}

std::string export_dot(const ProcessGraph& graph) {
  std::vector<const ProcessNode*> nodes;
  for (const auto& node : graph.nodes) nodes.push_back(&node);
  std::stable_sort(nodes.begin(), nodes.end(), [](const ProcessNode* a, const ProcessNode* b) {
    const auto ka = id_key(a->id), kb = id_key(b->id);
    return ka != kb ? ka < kb : a->id < b->id;
  });

  std::string out = "digraph process {\n";
  for (const ProcessNode* node : nodes) {
    out += "  \"" + dot_escape(node->id) + "\" [label=\"" + dot_escape(node->text) + "\", shape=" +
           (node->kind == NodeKind::Condition ? "diamond" : "box");
    if (node->terminal) out += ", peripheries=2";
    out += "];\n";
  }
  for (const auto& edge : graph.edges)
    out += "  \"" + dot_escape(edge.from) + "\" -> \"" + dot_escape(edge.to) +
           "\" [style=" + std::string(to_string(edge.style)) + "];\n";
  out += "}\n";
  return out;
}

std::string export_json(const ProcessGraph& graph) {
  ordered_json doc;
  doc["nodes"] = ordered_json::array();
  for (const auto& node : graph.nodes)
    doc["nodes"].push_back({{"id", node.id},
                            {"kind", std::string(to_string(node.kind))},
                            {"text", node.text},
                            {"terminal", node.terminal}});
  doc["edges"] = ordered_json::array();
  for (const auto& edge : graph.edges)
    doc["edges"].push_back(
        {{"from", edge.from}, {"to", edge.to}, {"style", std::string(to_string(edge.style))}});
  return doc.dump(2) + "\n";
}

ProcessGraph parse_graph_json(std::string_view json) {
  try {
    const auto doc = ordered_json::parse(json);
    ProcessGraph graph;
    for (const auto& node : doc.at("nodes")) {
      const auto kind = node.at("kind").get<std::string>();
      if (kind != "step" && kind != "condition") throw ParseError("unknown node kind " + kind);
      graph.nodes.push_back({node.at("id").get<std::string>(),
                             kind == "step" ? NodeKind::Step : NodeKind::Condition,
                             node.at("text").get<std::string>(), node.value("terminal", false)});
    }
    for (const auto& edge : doc.at("edges")) {
      const auto style = edge.at("style").get<std::string>();
      if (style != "solid" && style != "dashed") throw ParseError("unknown edge style " + style);
      graph.edges.push_back({edge.at("from").get<std::string>(), edge.at("to").get<std::string>(),
                             style == "solid" ? EdgeStyle::Solid : EdgeStyle::Dashed});
    }
    return graph;
  } catch (const ordered_json::exception& e) {
    throw ParseError(std::string("malformed graph JSON: ") + e.what());
  }
}

}  // namespace condsplit
