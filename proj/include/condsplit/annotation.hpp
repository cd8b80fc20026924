#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "condsplit/label.hpp"

namespace condsplit {

// Labeled character span [start, end) over the owning sentence text.
struct ClauseSpan {
  std::size_t start = 0;
  std::size_t end = 0;
  Label label = Label::Condition;

  friend auto operator<=>(const ClauseSpan&, const ClauseSpan&) = default;
};

// A Doccano record: text plus clause spans, or a sentence-level label when
// there are no spans.
struct AnnotatedSentence {
  std::int64_t id = 0;
  std::string text;
  std::vector<ClauseSpan> spans;
  std::optional<Label> sentence_label;

  friend bool operator==(const AnnotatedSentence&,
                         const AnnotatedSentence&) = default;
};

struct Violation {
  std::string invariant;
  std::vector<std::size_t> span_indices;
  std::string message;
};

// Empty result means the sentence is valid. Never throws on bad data, but
// text must be valid UTF-8.
std::vector<Violation> validate_sentence(const AnnotatedSentence& sentence);

// The four coarse sentence classes, derived from the clause labels.
enum class SentenceClass {
  NoCondition,           // NC
  OnlyCondition,         // OC
  ConditionAction,       // CA
  ConditionConsequence,  // CC
};

std::string_view to_code(SentenceClass cls);

// "If P, Q": condition is P, resultant is Q.
struct SplitResult {
  std::optional<ClauseSpan> condition;
  std::optional<ClauseSpan> resultant;
  SentenceClass sentence_class = SentenceClass::NoCondition;
  bool low_confidence = false;
  bool multi_clause = false;

  friend bool operator==(const SplitResult&, const SplitResult&) = default;
};

// Builds a SplitResult with sentence_class derived from the spans. Throws
// ValidationError if the spans overlap or carry the wrong labels.
SplitResult make_split_result(std::optional<ClauseSpan> condition,
                              std::optional<ClauseSpan> resultant,
                              bool low_confidence = false,
                              bool multi_clause = false);

// Prediction record for a split. NC sentences get the NoCondition sentence
// label; everything else is emitted as clause spans.
AnnotatedSentence to_annotated(std::int64_t id, std::string text,
                               const SplitResult& result);

// Reads back the first Condition span and the first Action/Consequence span.
// Sentences without a Condition span map to NC.
SplitResult to_split_result(const AnnotatedSentence& sentence);

}  // namespace condsplit
