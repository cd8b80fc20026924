#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "condsplit/annotation.hpp"
#include "condsplit/doccano.hpp"

namespace condsplit {

// Percentages in [0, 100].
struct Scores {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  std::size_t support = 0;  // gold spans
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
};

// P = TP/(TP+FP), R = TP/(TP+FN), F1 = 2PR/(P+R). An empty denominator
// scores 100 when the other error count is also zero (nothing predicted,
// nothing missed) and 0 otherwise.
Scores score_counts(std::size_t tp, std::size_t fp, std::size_t fn);

struct EvalOptions {
  std::vector<Label> labels = {Label::Condition, Label::Action, Label::Consequence};
  ParseMode mode = ParseMode::Strict;
};

struct EvalReport {
  std::map<Label, Scores> per_label;
  Scores micro;  // TP/FP/FN pooled over the scored labels
  std::size_t sentences = 0;
  std::vector<std::int64_t> gold_only_ids;
  std::vector<std::int64_t> pred_only_ids;
  std::vector<std::int64_t> text_mismatch_ids;
};

// Drops trailing whitespace and punctuation from the span, so that
// [17,47) and [17,46) over "... expires." compare equal.
ClauseSpan normalize_span(std::u32string_view text, ClauseSpan span);

// Span-level exact match: a prediction is a true positive when its label
// and normalized boundaries equal those of an unmatched gold span.
// Sentences are aligned by id. Unmatched ids or differing texts throw
// ValidationError in strict mode; lenient mode scores the matched ids and
// lists the rest in the report.
EvalReport exact_match_score(std::span<const AnnotatedSentence> gold,
                             std::span<const AnnotatedSentence> pred,
                             const EvalOptions& options = {});

double round2(double value);

// Rows Condition, Action, Consequence (whichever were scored) then Average.
std::string render_report_table(const EvalReport& report);
std::string render_report_json(const EvalReport& report);

enum class MismatchKind {
  MissingSpan,
  SpuriousSpan,
  BoundaryError,
  ActionConsequenceConfusion,
  ActionUnconditionalConfusion,
  OtherLabelConfusion,
};

std::string_view to_string(MismatchKind kind);

struct Mismatch {
  std::int64_t sentence_id = 0;
  MismatchKind kind = MismatchKind::MissingSpan;
  std::optional<ClauseSpan> gold;
  std::optional<ClauseSpan> predicted;
};

// Classifies every span that is not an exact match, over all clause labels,
// for sentences present on both sides.
std::vector<Mismatch> error_breakdown(std::span<const AnnotatedSentence> gold,
                                      std::span<const AnnotatedSentence> pred);

std::string render_mismatches_json(const std::vector<Mismatch>& mismatches);

}  // namespace condsplit
