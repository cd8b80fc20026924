#include "condsplit/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <sstream>
#include <unordered_map>

#include "condsplit/errors.hpp"
#include "condsplit/tokenizer.hpp"
#include "condsplit/utf8.hpp"

namespace condsplit {

namespace {

using ordered_json = nlohmann::ordered_json;

double ratio(std::size_t num, std::size_t den, std::size_t other_errors) {
  if (den == 0) return other_errors == 0 ? 100.0 : 0.0;
  return 100.0 * static_cast<double>(num) / static_cast<double>(den);
}

struct Aligned {
  const AnnotatedSentence* gold;
  const AnnotatedSentence* pred;
};

std::string join_ids(const std::vector<std::int64_t>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size() && i < 10; ++i) out += (i ? ", " : "") + std::to_string(ids[i]);
  if (ids.size() > 10) out += ", ...";
  return out;
}

// Pairs up sentences by id; collects everything that did not pair.
std::vector<Aligned> align(std::span<const AnnotatedSentence> gold,
                           std::span<const AnnotatedSentence> pred, EvalReport& report) {
  std::unordered_map<std::int64_t, const AnnotatedSentence*> by_id;
  for (const auto& sentence : pred) {
    if (!by_id.emplace(sentence.id, &sentence).second)
      throw ValidationError("duplicate prediction id " + std::to_string(sentence.id));
  }
  std::vector<Aligned> aligned;
  std::unordered_map<std::int64_t, bool> seen_gold;
  for (const auto& sentence : gold) {
    if (!seen_gold.emplace(sentence.id, true).second)
      throw ValidationError("duplicate gold id " + std::to_string(sentence.id));
    const auto it = by_id.find(sentence.id);
    if (it == by_id.end()) {
      report.gold_only_ids.push_back(sentence.id);
    } else if (it->second->text != sentence.text) {
      report.text_mismatch_ids.push_back(sentence.id);
    } else {
      aligned.push_back({&sentence, it->second});
    }
  }
  for (const auto& sentence : pred)
    if (!seen_gold.count(sentence.id)) report.pred_only_ids.push_back(sentence.id);
  return aligned;
}

std::vector<ClauseSpan> normalized_spans(const AnnotatedSentence& sentence) {
  const std::u32string text = utf8::decode(sentence.text);
  std::vector<ClauseSpan> out;
  out.reserve(sentence.spans.size());
  for (const ClauseSpan& span : sentence.spans) out.push_back(normalize_span(text, span));
  return out;
}

bool overlaps(const ClauseSpan& a, const ClauseSpan& b) { return a.start < b.end && b.start < a.end; }

MismatchKind confusion_kind(Label a, Label b) {
  auto is_pair = [&](Label x, Label y) { return (a == x && b == y) || (a == y && b == x); };
  if (is_pair(Label::Action, Label::Consequence)) return MismatchKind::ActionConsequenceConfusion;
  if (is_pair(Label::Action, Label::UnconditionalAction)) return MismatchKind::ActionUnconditionalConfusion;
  return MismatchKind::OtherLabelConfusion;
}

ordered_json scores_json(const Scores& s) {
  return {{"precision", round2(s.precision)},
          {"recall", round2(s.recall)},
          {"f1", round2(s.f1)},
          {"support", s.support},
          {"tp", s.tp},
          {"fp", s.fp},
          {"fn", s.fn}};
}

ordered_json span_json(const std::optional<ClauseSpan>& span) {
  if (!span) return nullptr;
  return ordered_json::array({span->start, span->end, std::string(to_string(span->label))});
}

}  // namespace

Scores score_counts(std::size_t tp, std::size_t fp, std::size_t fn) {
  Scores s;
  s.tp = tp;
  s.fp = fp;
  s.fn = fn;
  s.support = tp + fn;
  s.precision = ratio(tp, tp + fp, fn);
  s.recall = ratio(tp, tp + fn, fp);
  s.f1 = s.precision + s.recall > 0 ? 2 * s.precision * s.recall / (s.precision + s.recall) : 0.0;
  return s;
}

ClauseSpan normalize_span(std::u32string_view text, ClauseSpan span) {
  std::size_t end = std::min(span.end, text.size());
  while (end > span.start && !is_word_char(text[end - 1])) --end;
  if (end > span.start) span.end = end;
  return span;
}

EvalReport exact_match_score(std::span<const AnnotatedSentence> gold,
                             std::span<const AnnotatedSentence> pred, const EvalOptions& options) {
  EvalReport report;
  const auto aligned = align(gold, pred, report);
  if (options.mode == ParseMode::Strict) {
    if (!report.gold_only_ids.empty())
      throw ValidationError("gold ids missing from predictions: " + join_ids(report.gold_only_ids));
    if (!report.pred_only_ids.empty())
      throw ValidationError("prediction ids missing from gold: " + join_ids(report.pred_only_ids));
    if (!report.text_mismatch_ids.empty())
      throw ValidationError("gold and prediction texts differ for ids: " +
                            join_ids(report.text_mismatch_ids));
  }
  report.sentences = aligned.size();

  struct Tally {
    std::size_t tp = 0, fp = 0, fn = 0;
  };
  std::map<Label, Tally> tallies;
  for (Label label : options.labels) tallies[label];

  for (const auto& [g, p] : aligned) {
    const auto gold_spans = normalized_spans(*g);
    const auto pred_spans = normalized_spans(*p);
    for (auto& [label, tally] : tallies) {
      std::vector<std::pair<std::size_t, std::size_t>> gs, ps;
      for (const auto& s : gold_spans)
        if (s.label == label) gs.emplace_back(s.start, s.end);
      for (const auto& s : pred_spans)
        if (s.label == label) ps.emplace_back(s.start, s.end);
      std::sort(gs.begin(), gs.end());
      std::sort(ps.begin(), ps.end());
      std::vector<std::pair<std::size_t, std::size_t>> common;
      std::set_intersection(gs.begin(), gs.end(), ps.begin(), ps.end(), std::back_inserter(common));
      tally.tp += common.size();
      tally.fp += ps.size() - common.size();
      tally.fn += gs.size() - common.size();
    }
  }

  Tally pooled;
  for (const auto& [label, tally] : tallies) {
    report.per_label[label] = score_counts(tally.tp, tally.fp, tally.fn);
    pooled.tp += tally.tp;
    pooled.fp += tally.fp;
    pooled.fn += tally.fn;
  }
  report.micro = score_counts(pooled.tp, pooled.fp, pooled.fn);
  return report;
}

double round2(double value) { return std::round(value * 100.0) / 100.0; }

std::string render_report_table(const EvalReport& report) {
  std::ostringstream out;
  char line[128];
  std::snprintf(line, sizeof line, "%-12s %10s %10s %10s %10s\n", "", "Precision", "Recall", "F1",
                "support");
  out << line;
  auto row = [&](std::string_view name, const Scores& s) {
    std::snprintf(line, sizeof line, "%-12.*s %10.2f %10.2f %10.2f %10zu\n",
                  static_cast<int>(name.size()), name.data(), round2(s.precision), round2(s.recall),
                  round2(s.f1), s.support);
    out << line;
  };
  for (const auto& [label, scores] : report.per_label) row(to_string(label), scores);
  out << std::string(56, '-') << '\n';
  row("Average", report.micro);
  out << "Average is the micro-average over pooled span counts; exact match, "
      << report.sentences << " sentences.\n";
  return out.str();
}

std::string render_report_json(const EvalReport& report) {
  ordered_json doc;
  doc["metric"] = "exact_match";
  doc["average"] = "micro";
  doc["sentences"] = report.sentences;
  ordered_json labels = ordered_json::object();
  for (const auto& [label, scores] : report.per_label)
    labels[std::string(to_string(label))] = scores_json(scores);
  doc["labels"] = std::move(labels);
  doc["micro"] = scores_json(report.micro);
  doc["unmatched"] = {{"gold_only", report.gold_only_ids},
                      {"pred_only", report.pred_only_ids},
                      {"text_mismatch", report.text_mismatch_ids}};
  return doc.dump(2) + "\n";
}

std::string_view to_string(MismatchKind kind) {
  switch (kind) {
    case MismatchKind::MissingSpan:
      return "missing_span";
    case MismatchKind::SpuriousSpan:
      return "spurious_span";
    case MismatchKind::BoundaryError:
      return "boundary_error";
    case MismatchKind::ActionConsequenceConfusion:
      return "label_confusion_ac_cs";
    case MismatchKind::ActionUnconditionalConfusion:
      return "label_confusion_ac_ua";
    case MismatchKind::OtherLabelConfusion:
      return "label_confusion_other";
  }
  return "missing_span";
}

std::vector<Mismatch> error_breakdown(std::span<const AnnotatedSentence> gold,
                                      std::span<const AnnotatedSentence> pred) {
  EvalReport unused;
  const auto aligned = align(gold, pred, unused);
  std::vector<Mismatch> out;
  for (const auto& [g, p] : aligned) {
    auto gold_spans = normalized_spans(*g);
    auto pred_spans = normalized_spans(*p);
    std::vector<bool> gold_used(gold_spans.size(), false), pred_used(pred_spans.size(), false);

    auto pass = [&](auto&& matches, std::optional<MismatchKind> kind) {
      for (std::size_t i = 0; i < gold_spans.size(); ++i) {
        if (gold_used[i]) continue;
        for (std::size_t j = 0; j < pred_spans.size(); ++j) {
          if (pred_used[j] || !matches(gold_spans[i], pred_spans[j])) continue;
          gold_used[i] = pred_used[j] = true;
          if (kind)
            out.push_back({g->id, *kind, gold_spans[i], pred_spans[j]});
          else if (gold_spans[i].label != pred_spans[j].label)
            out.push_back({g->id, confusion_kind(gold_spans[i].label, pred_spans[j].label),
                           gold_spans[i], pred_spans[j]});
          break;
        }
      }
    };
    // Exact matches first, then same boundaries with another label, then
    // same label with overlapping boundaries.
    pass([](const ClauseSpan& a, const ClauseSpan& b) { return a == b; }, std::nullopt);
    pass([](const ClauseSpan& a, const ClauseSpan& b) { return a.start == b.start && a.end == b.end; },
         std::nullopt);
    pass([](const ClauseSpan& a, const ClauseSpan& b) { return a.label == b.label && overlaps(a, b); },
         MismatchKind::BoundaryError);

    for (std::size_t i = 0; i < gold_spans.size(); ++i)
      if (!gold_used[i]) out.push_back({g->id, MismatchKind::MissingSpan, gold_spans[i], std::nullopt});
    for (std::size_t j = 0; j < pred_spans.size(); ++j)
      if (!pred_used[j]) out.push_back({g->id, MismatchKind::SpuriousSpan, std::nullopt, pred_spans[j]});
  }
  return out;
}

std::string render_mismatches_json(const std::vector<Mismatch>& mismatches) {
  ordered_json doc = ordered_json::array();
  for (const auto& m : mismatches)
    doc.push_back({{"id", m.sentence_id},
                   {"kind", std::string(to_string(m.kind))},
                   {"gold", span_json(m.gold)},
                   {"predicted", span_json(m.predicted)}});
  return doc.dump(2) + "\n";
}

}  // namespace condsplit
