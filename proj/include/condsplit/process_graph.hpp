#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "condsplit/annotation.hpp"

namespace condsplit {

enum class NodeKind { Step, Condition };
enum class EdgeStyle { Solid, Dashed };

std::string_view to_string(NodeKind kind);
std::string_view to_string(EdgeStyle style);

// Condition nodes are gateways (drawn as diamonds); step nodes hold
// instructions or resultants. A terminal step ends its branch.
struct ProcessNode {
  std::string id;
  NodeKind kind = NodeKind::Step;
  std::string text;
  bool terminal = false;

  friend bool operator==(const ProcessNode&, const ProcessNode&) = default;
};

// Solid edges carry the main flow; a dashed edge links a condition to its
// resultant.
struct ProcessEdge {
  std::string from;
  std::string to;
  EdgeStyle style = EdgeStyle::Solid;

  friend bool operator==(const ProcessEdge&, const ProcessEdge&) = default;
};

struct ProcessGraph {
  std::vector<ProcessNode> nodes;
  std::vector<ProcessEdge> edges;

  const ProcessNode* find(std::string_view id) const;

  friend bool operator==(const ProcessGraph&, const ProcessGraph&) = default;
};

struct GraphInput {
  std::string text;
  SplitResult result;
};

// Builds the flow for sentences in document order. Node ids are
// "s<index>.step", "s<index>.cond" and "s<index>.res".
//   NC: a step on the main flow.
//   OC: a condition on the main flow, no branch.
//   CA: a condition with a dashed branch to the action, which continues the
//       main flow.
//   CC: a condition with a dashed branch to a terminal consequence; the main
//       flow continues from the condition.
ProcessGraph build_graph(std::span<const GraphInput> inputs);

// Referential-integrity and edge-style violations; empty when valid.
std::vector<std::string> check_graph(const ProcessGraph& graph);

// Graphviz DOT. Diamonds for conditions, boxes for steps, dashed branch
// edges. Nodes are emitted in id order.
std::string export_dot(const ProcessGraph& graph);

// {"nodes":[{"id","kind","text","terminal"}],"edges":[{"from","to","style"}]}
std::string export_json(const ProcessGraph& graph);

// Throws ParseError on malformed documents.
ProcessGraph parse_graph_json(std::string_view json);

}  // namespace condsplit
