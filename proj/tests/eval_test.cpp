#include <gtest/gtest.h>

#include <json.hpp>

#include "condsplit/errors.hpp"
#include "condsplit/eval.hpp"
#include "test_support.hpp"

namespace condsplit {
namespace {

const std::string kText = "Include the date if the opt-out period expires.";

AnnotatedSentence with_spans(std::int64_t id, std::vector<ClauseSpan> spans, std::string text = kText) {
  AnnotatedSentence s{id, std::move(text), std::move(spans), std::nullopt};
  if (s.spans.empty()) s.sentence_label = Label::NoCondition;
  return s;
}

TEST(ScoreCountsTest, Formulae) {
  const auto s = score_counts(3, 1, 2);
  EXPECT_DOUBLE_EQ(s.precision, 75.0);
  EXPECT_DOUBLE_EQ(s.recall, 60.0);
  EXPECT_NEAR(s.f1, 2 * 75.0 * 60.0 / 135.0, 1e-12);
  EXPECT_EQ(s.support, 5u);
  EXPECT_DOUBLE_EQ(score_counts(0, 0, 0).f1, 100.0);
  EXPECT_DOUBLE_EQ(score_counts(0, 2, 0).precision, 0.0);
  EXPECT_DOUBLE_EQ(score_counts(0, 2, 0).recall, 0.0);
  EXPECT_DOUBLE_EQ(score_counts(0, 0, 2).precision, 0.0);
  EXPECT_DOUBLE_EQ(score_counts(0, 2, 3).f1, 0.0);
}

TEST(NormalizeSpanTest, StripsTrailingNonWordOnly) {
  const std::u32string text = U"Include the date if the opt-out period expires.";
  EXPECT_EQ(normalize_span(text, {17, 47, Label::Condition}).end, 46u);
  EXPECT_EQ(normalize_span(text, {17, 46, Label::Condition}).end, 46u);
  EXPECT_EQ(normalize_span(text, {15, 17, Label::Condition}).end, 16u);
  EXPECT_EQ(normalize_span(U"a, ..", {1, 5, Label::Condition}).end, 5u);
}

TEST(ExactMatchTest, IdentityIsPerfect) {
  const auto gold = testing::golden_sentences();
  const auto report = exact_match_score(gold, gold);
  ASSERT_EQ(report.per_label.size(), 3u);
  for (const auto& [label, s] : report.per_label) {
    EXPECT_DOUBLE_EQ(s.precision, 100.0);
    EXPECT_DOUBLE_EQ(s.recall, 100.0);
    EXPECT_DOUBLE_EQ(s.f1, 100.0);
  }
  EXPECT_EQ(report.micro.support, 18u + 10u + 8u);
}

TEST(ExactMatchTest, ShiftedActionHalvesMicro) {
  const std::vector<AnnotatedSentence> gold = {with_spans(1, {{0, 16, Label::Action}, {17, 47, Label::Condition}})};
  const std::vector<AnnotatedSentence> pred = {with_spans(1, {{0, 11, Label::Action}, {17, 47, Label::Condition}})};
  const auto report = exact_match_score(gold, pred);
  EXPECT_DOUBLE_EQ(report.per_label.at(Label::Condition).precision, 100.0);
  EXPECT_DOUBLE_EQ(report.per_label.at(Label::Condition).recall, 100.0);
  EXPECT_DOUBLE_EQ(report.per_label.at(Label::Action).precision, 0.0);
  EXPECT_DOUBLE_EQ(report.per_label.at(Label::Action).recall, 0.0);
  EXPECT_DOUBLE_EQ(report.micro.precision, 50.0);
  EXPECT_DOUBLE_EQ(report.micro.recall, 50.0);
  EXPECT_DOUBLE_EQ(report.micro.f1, 50.0);
}

TEST(ExactMatchTest, TrailingPeriodDoesNotFlipAMatch) {
  const std::vector<AnnotatedSentence> gold = {with_spans(1, {{0, 16, Label::Action}, {17, 47, Label::Condition}})};
  const std::vector<AnnotatedSentence> pred = {with_spans(1, {{0, 16, Label::Action}, {17, 46, Label::Condition}})};
  EXPECT_DOUBLE_EQ(exact_match_score(gold, pred).micro.f1, 100.0);
}

TEST(ExactMatchTest, TableLayoutWithConstructedSupports) {
  std::vector<AnnotatedSentence> gold;
  std::int64_t id = 1;
  auto add = [&](Label label, int count) {
    for (int i = 0; i < count; ++i) gold.push_back(with_spans(id++, {{0, 16, label}}));
  };
  add(Label::Condition, 242);
  add(Label::Action, 151);
  add(Label::Consequence, 92);
  const std::string table = render_report_table(exact_match_score(gold, gold));
  std::istringstream lines(table);
  std::vector<std::string> rows;
  for (std::string line; std::getline(lines, line);) rows.push_back(line);
  ASSERT_GE(rows.size(), 6u);
  EXPECT_NE(rows[0].find("Precision"), std::string::npos);
  EXPECT_NE(rows[0].find("support"), std::string::npos);
  EXPECT_EQ(rows[1], "Condition        100.00     100.00     100.00        242");
  EXPECT_EQ(rows[2], "Action           100.00     100.00     100.00        151");
  EXPECT_EQ(rows[3], "Consequence      100.00     100.00     100.00         92");
  EXPECT_EQ(rows[5], "Average          100.00     100.00     100.00        485");
  EXPECT_NE(table.find("micro-average"), std::string::npos);
}

TEST(ExactMatchTest, JsonReport) {
  const std::vector<AnnotatedSentence> gold = {with_spans(1, {{0, 16, Label::Action}, {17, 47, Label::Condition}})};
  const std::vector<AnnotatedSentence> pred = {with_spans(1, {{0, 11, Label::Action}, {17, 47, Label::Condition}})};
  const auto doc = nlohmann::json::parse(render_report_json(exact_match_score(gold, pred)));
  EXPECT_EQ(doc["average"], "micro");
  EXPECT_DOUBLE_EQ(doc["micro"]["f1"].get<double>(), 50.0);
  EXPECT_EQ(doc["labels"]["Action"]["fp"], 1);
  EXPECT_EQ(doc["micro"]["support"], 2);
}

TEST(ExactMatchTest, UnmatchedIdsStrictAndLenient) {
  const std::vector<AnnotatedSentence> gold = {with_spans(1, {{0, 16, Label::Action}}), with_spans(2, {})};
  const std::vector<AnnotatedSentence> pred = {with_spans(1, {{0, 16, Label::Action}}), with_spans(3, {}),
                                               with_spans(4, {}, "other")};
  EXPECT_THROW(exact_match_score(gold, pred), ValidationError);
  const auto report = exact_match_score(gold, pred, {.mode = ParseMode::Lenient});
  EXPECT_EQ(report.sentences, 1u);
  EXPECT_EQ(report.gold_only_ids, std::vector<std::int64_t>{2});
  EXPECT_EQ(report.pred_only_ids, (std::vector<std::int64_t>{3, 4}));

  std::vector<AnnotatedSentence> mismatched = {with_spans(1, {{0, 16, Label::Action}}, "Include the date!")};
  EXPECT_THROW(exact_match_score(std::vector<AnnotatedSentence>{gold[0]}, mismatched), ValidationError);

  const std::vector<AnnotatedSentence> dup = {gold[0], gold[0]};
  EXPECT_THROW(exact_match_score(dup, dup, {.mode = ParseMode::Lenient}), ValidationError);
}

TEST(ExactMatchTest, LabelSelection) {
  const std::vector<AnnotatedSentence> gold = {
      with_spans(1, {{0, 16, Label::UnconditionalAction}, {17, 47, Label::Condition}})};
  const std::vector<AnnotatedSentence> pred = {with_spans(1, {{17, 47, Label::Condition}})};
  EXPECT_DOUBLE_EQ(exact_match_score(gold, pred).micro.f1, 100.0);
  EvalOptions with_ua;
  with_ua.labels.push_back(Label::UnconditionalAction);
  EXPECT_EQ(exact_match_score(gold, pred, with_ua).micro.fn, 1u);
}

// -- properties -----------------------------------------------------------------

TEST(ExactMatchPropertyTest, MatchesBruteForceOracle) {
  std::mt19937 rng(314);
  const std::vector<Label> labels = {Label::Condition, Label::Action, Label::Consequence};
  for (int round = 0; round < 100; ++round) {
    const auto [gold, pred] = testing::random_mini_corpus(rng);
    const auto report = exact_match_score(gold, pred);
    const auto oracle = testing::oracle_count(gold, pred, labels);
    testing::OracleCounts pooled;
    for (Label l : labels) {
      const auto& o = oracle.at(l);
      const auto& s = report.per_label.at(l);
      ASSERT_EQ(s.tp, o.tp);
      ASSERT_EQ(s.fp, o.fp);
      ASSERT_EQ(s.fn, o.fn);
      ASSERT_EQ(round2(s.precision), testing::oracle_round2(testing::oracle_percent(o.tp, o.tp + o.fp, o.fn)));
      ASSERT_EQ(round2(s.recall), testing::oracle_round2(testing::oracle_percent(o.tp, o.tp + o.fn, o.fp)));
      pooled.tp += o.tp;
      pooled.fp += o.fp;
      pooled.fn += o.fn;
    }
    ASSERT_EQ(report.micro.tp, pooled.tp);
    ASSERT_EQ(report.micro.fp, pooled.fp);
    ASSERT_EQ(report.micro.fn, pooled.fn);
    std::size_t support = 0;
    for (const auto& [l, s] : report.per_label) support += s.support;
    ASSERT_EQ(report.micro.support, support);
  }
}

TEST(ExactMatchPropertyTest, SwappingSidesSwapsPrecisionAndRecall) {
  std::mt19937 rng(2718);
  for (int round = 0; round < 200; ++round) {
    const auto [gold, pred] = testing::random_mini_corpus(rng);
    const auto forward = exact_match_score(gold, pred);
    const auto backward = exact_match_score(pred, gold);
    for (const auto& [l, s] : forward.per_label) {
      ASSERT_EQ(s.precision, backward.per_label.at(l).recall);
      ASSERT_EQ(s.recall, backward.per_label.at(l).precision);
      ASSERT_EQ(s.f1, backward.per_label.at(l).f1);
    }
    ASSERT_EQ(forward.micro.precision, backward.micro.recall);
  }
}

TEST(ExactMatchPropertyTest, DeletingFalsePositiveNeverLowersPrecision) {
  std::mt19937 rng(1618);
  for (int round = 0; round < 200; ++round) {
    auto [gold, pred] = testing::random_mini_corpus(rng);
    const auto before = exact_match_score(gold, pred);
    // Remove the first predicted span that has no exact counterpart in gold.
    bool removed = false;
    for (auto& p : pred) {
      const auto& g = *std::find_if(gold.begin(), gold.end(), [&](const auto& x) { return x.id == p.id; });
      for (std::size_t j = 0; j < p.spans.size() && !removed; ++j) {
        const auto single = exact_match_score(std::vector<AnnotatedSentence>{g},
                                              std::vector<AnnotatedSentence>{with_spans(p.id, {p.spans[j]}, p.text)});
        if (single.micro.tp == 0) {
          p.spans.erase(p.spans.begin() + static_cast<std::ptrdiff_t>(j));
          if (p.spans.empty()) p.sentence_label = Label::NoCondition;
          removed = true;
        }
      }
      if (removed) break;
    }
    if (!removed) continue;
    const auto after = exact_match_score(gold, pred);
    ASSERT_GE(after.micro.precision, before.micro.precision);
    ASSERT_EQ(after.micro.fp + 1, before.micro.fp);
  }
}

TEST(ExactMatchPropertyTest, ValuesStayInRange) {
  std::mt19937 rng(4);
  for (int round = 0; round < 200; ++round) {
    const auto [gold, pred] = testing::random_mini_corpus(rng);
    const auto report = exact_match_score(gold, pred);
    for (const auto& [l, s] : report.per_label)
      for (double v : {s.precision, s.recall, s.f1}) ASSERT_TRUE(v >= 0.0 && v <= 100.0);
  }
}

// -- error breakdown --------------------------------------------------------------

TEST(ErrorBreakdownTest, Examples) {
  const std::vector<AnnotatedSentence> gold = {with_spans(1, {{0, 16, Label::Action}})};
  {
    const std::vector<AnnotatedSentence> pred = {with_spans(1, {{0, 16, Label::Consequence}})};
    const auto m = error_breakdown(gold, pred);
    ASSERT_EQ(m.size(), 1u);
    EXPECT_EQ(m[0].kind, MismatchKind::ActionConsequenceConfusion);
    EXPECT_EQ(to_string(m[0].kind), "label_confusion_ac_cs");
  }
  {
    const std::vector<AnnotatedSentence> pred = {with_spans(1, {{0, 12, Label::Action}})};
    const auto m = error_breakdown(gold, pred);
    ASSERT_EQ(m.size(), 1u);
    EXPECT_EQ(m[0].kind, MismatchKind::BoundaryError);
    EXPECT_EQ(m[0].predicted->end, 11u);  // "Include the" after normalization
  }
  {
    const std::string text = "Verify in MSR link the order quantity and if it differs, notify the buyer.";
    const std::vector<AnnotatedSentence> g = {with_spans(3, {{0, 37, Label::UnconditionalAction}}, text)};
    const std::vector<AnnotatedSentence> p = {with_spans(3, {{0, 37, Label::Action}}, text)};
    const auto m = error_breakdown(g, p);
    ASSERT_EQ(m.size(), 1u);
    EXPECT_EQ(m[0].kind, MismatchKind::ActionUnconditionalConfusion);
  }
}

TEST(ErrorBreakdownTest, MissingAndSpurious) {
  const std::vector<AnnotatedSentence> gold = {with_spans(1, {{0, 16, Label::Action}})};
  const std::vector<AnnotatedSentence> pred = {with_spans(1, {{17, 47, Label::Condition}})};
  const auto m = error_breakdown(gold, pred);
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m[0].kind, MismatchKind::MissingSpan);
  EXPECT_EQ(m[1].kind, MismatchKind::SpuriousSpan);
  EXPECT_TRUE(error_breakdown(gold, gold).empty());
  const auto doc = nlohmann::json::parse(render_mismatches_json(m));
  EXPECT_EQ(doc[0]["kind"], "missing_span");
  EXPECT_TRUE(doc[0]["predicted"].is_null());
}

}  // namespace
}  // namespace condsplit
