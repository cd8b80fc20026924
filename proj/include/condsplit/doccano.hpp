#pragma once

#include <cstddef>
#include <istream>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "condsplit/annotation.hpp"

namespace condsplit {

enum class ParseMode { Strict, Lenient };

struct ReadIssue {
  std::size_t line = 0;
  std::string message;
};

// Parses one JSONL record: {"id": int, "text": str, "labels": [[start, end,
// label], ...]}. Unknown fields are ignored. Sentence-level labels
// ("No Condition", "Only-Condition") appear as a triple covering the text.
// Throws ParseError (syntax, schema) or ValidationError (invariants).
AnnotatedSentence parse_doccano_record(std::string_view line);

// Serializes one record, without trailing newline. `model` adds the
// prediction-file "model" field.
std::string to_doccano_line(const AnnotatedSentence& sentence,
                            std::optional<std::string_view> model = std::nullopt);

// Prediction record: the Doccano fields plus "model" and a "meta" object.
std::string to_prediction_line(const AnnotatedSentence& sentence, std::string_view model,
                               const nlohmann::ordered_json& meta);

// Streaming reader. Blank lines are skipped. In strict mode the first bad
// record throws ParseError naming its line; in lenient mode it is recorded
// in issues() and skipped.
class DoccanoReader {
 public:
  explicit DoccanoReader(std::istream& in, ParseMode mode = ParseMode::Strict)
      : in_(in), mode_(mode) {}

  std::optional<AnnotatedSentence> next();

  const std::vector<ReadIssue>& issues() const { return issues_; }
  std::size_t line() const { return line_; }

 private:
  std::istream& in_;
  ParseMode mode_;
  std::size_t line_ = 0;
  std::vector<ReadIssue> issues_;
};

struct ReadResult {
  std::vector<AnnotatedSentence> sentences;
  std::vector<ReadIssue> skipped;
};

ReadResult read_doccano(std::istream& in, ParseMode mode = ParseMode::Strict);

void write_doccano(std::ostream& out, std::span<const AnnotatedSentence> sentences);

}  // namespace condsplit
