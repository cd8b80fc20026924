#include "condsplit/doccano.hpp"

#include <algorithm>

#include "condsplit/errors.hpp"
#include "condsplit/utf8.hpp"

namespace condsplit {

namespace {

using ordered_json = nlohmann::ordered_json;

std::size_t as_offset(const ordered_json& value, std::string_view what) {
  if (!value.is_number_integer() || value.get<std::int64_t>() < 0)
    throw ParseError(std::string(what) + " must be a non-negative integer");
  return value.get<std::size_t>();
}

std::string_view trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r\n");
  return text.substr(first, last - first + 1);
}

}  // namespace

AnnotatedSentence parse_doccano_record(std::string_view line) {
  ordered_json record;
  try {
    record = ordered_json::parse(line);
  } catch (const ordered_json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!record.is_object()) throw ParseError("record is not a JSON object");

  AnnotatedSentence sentence;
  const auto id = record.find("id");
  if (id == record.end() || !id->is_number_integer())
    throw ParseError("field \"id\" must be an integer");
  sentence.id = id->get<std::int64_t>();

  const auto text = record.find("text");
  if (text == record.end() || !text->is_string()) throw ParseError("field \"text\" must be a string");
  sentence.text = text->get<std::string>();

  const auto labels = record.find("labels");
  if (labels == record.end() || !labels->is_array())
    throw ParseError("field \"labels\" must be an array");
  for (const auto& triple : *labels) {
    if (!triple.is_array() || triple.size() != 3 || !triple[2].is_string())
      throw ParseError("each label must be [start, end, \"Label\"]");
    const auto name = triple[2].get<std::string>();
    const auto label = parse_label(name);
    if (!label) throw ParseError("unknown label \"" + name + "\"");
    const std::size_t start = as_offset(triple[0], "label start");
    const std::size_t end = as_offset(triple[1], "label end");
    if (is_sentence_level(*label)) {
      if (sentence.sentence_label)
        throw ValidationError("record " + std::to_string(sentence.id) +
                              " has more than one sentence-level label");
      sentence.sentence_label = *label;
    } else {
      sentence.spans.push_back({start, end, *label});
    }
  }
  // Doccano lists labels in annotation order; the model keeps them by offset.
  std::stable_sort(sentence.spans.begin(), sentence.spans.end(),
                   [](const ClauseSpan& a, const ClauseSpan& b) { return a.start < b.start; });

  const auto violations = validate_sentence(sentence);
  if (!violations.empty()) {
    std::string message = "record " + std::to_string(sentence.id) + " is invalid:";
    for (const auto& v : violations) message += " [" + v.invariant + "] " + v.message + ";";
    message.pop_back();
    throw ValidationError(message);
  }
  return sentence;
}

namespace {

ordered_json to_record(const AnnotatedSentence& sentence) {
  ordered_json record;
  record["id"] = sentence.id;
  record["text"] = sentence.text;
  auto labels = ordered_json::array();
  for (const ClauseSpan& span : sentence.spans)
    labels.push_back(ordered_json::array({span.start, span.end, std::string(to_string(span.label))}));
  if (sentence.sentence_label)
    labels.push_back(ordered_json::array(
        {0, utf8::length(sentence.text), std::string(to_string(*sentence.sentence_label))}));
  record["labels"] = std::move(labels);
  return record;
}

}  // namespace

std::string to_doccano_line(const AnnotatedSentence& sentence,
                            std::optional<std::string_view> model) {
  ordered_json record = to_record(sentence);
  if (model) record["model"] = std::string(*model);
  return record.dump();
}

std::string to_prediction_line(const AnnotatedSentence& sentence, std::string_view model,
                               const ordered_json& meta) {
  ordered_json record = to_record(sentence);
  record["model"] = std::string(model);
  record["meta"] = meta;
  return record.dump();
}

std::optional<AnnotatedSentence> DoccanoReader::next() {
  std::string raw;
  while (std::getline(in_, raw)) {
    ++line_;
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    try {
      return parse_doccano_record(line);
    } catch (const Error& e) {
      if (mode_ == ParseMode::Strict) throw ParseError(e.what(), line_);
      issues_.push_back({line_, e.what()});
    }
  }
  return std::nullopt;
}

ReadResult read_doccano(std::istream& in, ParseMode mode) {
  DoccanoReader reader(in, mode);
  ReadResult result;
  while (auto sentence = reader.next()) result.sentences.push_back(std::move(*sentence));
  result.skipped = reader.issues();
  return result;
}

void write_doccano(std::ostream& out, std::span<const AnnotatedSentence> sentences) {
  for (const auto& sentence : sentences) out << to_doccano_line(sentence) << '\n';
}

}  // namespace condsplit
