#include "condsplit/annotation.hpp"

#include <algorithm>

#include "condsplit/errors.hpp"
#include "condsplit/utf8.hpp"

namespace condsplit {

namespace {

bool overlaps(const ClauseSpan& a, const ClauseSpan& b) {
  return a.start < b.end && b.start < a.end;
}

std::string describe(const ClauseSpan& span) {
  return "[" + std::to_string(span.start) + "," + std::to_string(span.end) + "," +
         std::string(to_code(span.label)) + "]";
}

}  // namespace

std::vector<Violation> validate_sentence(const AnnotatedSentence& sentence) {
  std::vector<Violation> out;
  const std::size_t length = utf8::length(sentence.text);
  const auto& spans = sentence.spans;

  for (std::size_t i = 0; i < spans.size(); ++i) {
    const ClauseSpan& span = spans[i];
    if (span.start >= span.end || span.end > length) {
      out.push_back({"span_bounds",
                     {i},
                     "span " + std::to_string(i) + " " + describe(span) +
                         " violates 0 <= start < end <= " + std::to_string(length)});
    }
    if (!is_clause_level(span.label)) {
      out.push_back({"span_label",
                     {i},
                     "span " + std::to_string(i) + " carries sentence-level label " +
                         std::string(to_string(span.label))});
    }
  }

  for (std::size_t i = 1; i < spans.size(); ++i) {
    if (spans[i].start < spans[i - 1].start) {
      out.push_back({"spans_sorted",
                     {i - 1, i},
                     "span " + std::to_string(i) + " starts before span " +
                         std::to_string(i - 1)});
    }
  }

  for (std::size_t i = 0; i < spans.size(); ++i) {
    for (std::size_t j = i + 1; j < spans.size(); ++j) {
      if (overlaps(spans[i], spans[j])) {
        out.push_back({"spans_disjoint",
                       {i, j},
                       "spans " + std::to_string(i) + " " + describe(spans[i]) + " and " +
                           std::to_string(j) + " " + describe(spans[j]) + " overlap"});
      }
    }
  }

  if (sentence.sentence_label.has_value() == !spans.empty()) {
    out.push_back({"sentence_label_iff_no_spans",
                   {},
                   spans.empty() ? "sentence has neither spans nor a sentence label"
                                 : "sentence has both spans and a sentence label"});
  }
  if (sentence.sentence_label && !is_sentence_level(*sentence.sentence_label)) {
    out.push_back({"sentence_label_level",
                   {},
                   "sentence label " + std::string(to_string(*sentence.sentence_label)) +
                       " is clause-level"});
  }
  return out;
}

std::string_view to_code(SentenceClass cls) {
  switch (cls) {
    case SentenceClass::NoCondition:
      return "NC";
    case SentenceClass::OnlyCondition:
      return "OC";
    case SentenceClass::ConditionAction:
      return "CA";
    case SentenceClass::ConditionConsequence:
      return "CC";
  }
  return "NC";
}

SplitResult make_split_result(std::optional<ClauseSpan> condition,
                              std::optional<ClauseSpan> resultant, bool low_confidence,
                              bool multi_clause) {
  if (condition && condition->label != Label::Condition)
    throw ValidationError("condition span must carry the Condition label");
  if (resultant && resultant->label != Label::Action &&
      resultant->label != Label::Consequence)
    throw ValidationError("resultant span must be Action or Consequence");
  if (resultant && !condition)
    throw ValidationError("a resultant requires a condition");
  if (condition && resultant && overlaps(*condition, *resultant))
    throw ValidationError("condition and resultant overlap");

  SplitResult result;
  result.condition = condition;
  result.resultant = resultant;
  result.low_confidence = low_confidence;
  result.multi_clause = multi_clause;
  if (!condition)
    result.sentence_class = SentenceClass::NoCondition;
  else if (!resultant)
    result.sentence_class = SentenceClass::OnlyCondition;
  else if (resultant->label == Label::Action)
    result.sentence_class = SentenceClass::ConditionAction;
  else
    result.sentence_class = SentenceClass::ConditionConsequence;
  return result;
}

AnnotatedSentence to_annotated(std::int64_t id, std::string text,
                               const SplitResult& result) {
  AnnotatedSentence out;
  out.id = id;
  out.text = std::move(text);
  if (result.condition) out.spans.push_back(*result.condition);
  if (result.resultant) out.spans.push_back(*result.resultant);
  std::sort(out.spans.begin(), out.spans.end());
  if (out.spans.empty()) out.sentence_label = Label::NoCondition;
  return out;
}

SplitResult to_split_result(const AnnotatedSentence& sentence) {
  std::vector<ClauseSpan> conditions;
  std::vector<ClauseSpan> resultants;
  for (const ClauseSpan& span : sentence.spans) {
    if (span.label == Label::Condition)
      conditions.push_back(span);
    else if (span.label == Label::Action || span.label == Label::Consequence)
      resultants.push_back(span);
  }
  if (conditions.empty()) return make_split_result(std::nullopt, std::nullopt);

  const ClauseSpan& condition = conditions.front();
  std::optional<ClauseSpan> resultant;
  // Same preference as the splitter: nearest following, else nearest preceding.
  for (const ClauseSpan& span : resultants) {
    if (span.start >= condition.end) {
      resultant = span;
      break;
    }
  }
  if (!resultant) {
    for (const ClauseSpan& span : resultants)
      if (span.end <= condition.start) resultant = span;
  }
  const bool multi = conditions.size() > 1 || resultants.size() > 1;
  return make_split_result(condition, resultant, false, multi);
}

}  // namespace condsplit
