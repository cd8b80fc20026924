#include <gtest/gtest.h>

#include <thread>

#include "condsplit/errors.hpp"
#include "condsplit/rule_splitter.hpp"
#include "condsplit/utf8.hpp"
#include "test_support.hpp"

namespace condsplit {
namespace {

const RuleSplitter& splitter() {
  static const RuleSplitter instance;
  return instance;
}

std::string slice(const std::string& text, const std::optional<ClauseSpan>& span) {
  return span ? utf8::slice(text, span->start, span->end) : std::string("<none>");
}

std::string range_text(const std::vector<Token>& tokens, TokenRange range) {
  std::string out;
  for (std::size_t i = range.begin; i < range.end; ++i) out += (out.empty() ? "" : " ") + tokens[i].text;
  return out;
}

struct Staged {
  std::vector<Token> tokens;
  std::vector<TokenFeatures> features;
  explicit Staged(const std::string& s) : tokens(tokenize(s)), features(extract_features(tokens)) {}
};

// -- classify_conditional ---------------------------------------------------

TEST(ClassifyConditionalTest, Examples) {
  EXPECT_TRUE(splitter().classify_conditional("If it rains, children should stay home."));
  EXPECT_FALSE(splitter().classify_conditional("Children stay home."));
  EXPECT_FALSE(splitter().classify_conditional("Please save the file if possible."));
}

TEST(ClassifyConditionalTest, ExclusionPhrasesInContext) {
  EXPECT_FALSE(splitter().classify_conditional("Report the defects, if any."));
  EXPECT_FALSE(splitter().classify_conditional("Restart the server if needed, then log in."));
  EXPECT_TRUE(splitter().classify_conditional("Call us if any doubt exists."));
  EXPECT_THROW(splitter().classify_conditional("  "), EmptyInputError);
}

// -- stage (i) ----------------------------------------------------------------

TEST(FindConditionScopeTest, Examples) {
  {
    Staged s("Include the date if the opt-out period expires.");
    const auto range = splitter().find_condition_scope(s.tokens, s.features);
    ASSERT_TRUE(range);
    EXPECT_EQ(range_text(s.tokens, *range), "if the opt-out period expires");
  }
  {
    Staged s("If it rains, children should stay home.");
    const auto range = splitter().find_condition_scope(s.tokens, s.features);
    ASSERT_TRUE(range);
    EXPECT_EQ(*range, (TokenRange{0, 3}));
  }
  {
    Staged s("Unless it rains, children can go out.");
    EXPECT_EQ(range_text(s.tokens, *splitter().find_condition_scope(s.tokens, s.features)), "Unless it rains");
  }
}

TEST(FindConditionScopeTest, StopsAtThenMarker) {
  Staged s("If using PayPal for payment then click on the PayPal tab.");
  EXPECT_EQ(range_text(s.tokens, *splitter().find_condition_scope(s.tokens, s.features)),
            "If using PayPal for payment");
  Staged none("Children stay home.");
  EXPECT_FALSE(splitter().find_condition_scope(none.tokens, none.features));
}

// -- stage (ii) ---------------------------------------------------------------

TEST(CheckPredicateFormTest, Examples) {
  const auto clause = tokenize("if the opt-out period expires");
  EXPECT_TRUE(splitter().check_predicate_form(clause, {0, clause.size()}));
  const auto bare = tokenize("if");
  EXPECT_FALSE(splitter().check_predicate_form(bare, {0, 1}));
  const auto doubt = tokenize("if any doubt exists");
  EXPECT_TRUE(splitter().check_predicate_form(doubt, {0, doubt.size()}));
  const auto any = tokenize("if any");
  EXPECT_FALSE(splitter().check_predicate_form(any, {0, any.size()}));
  const auto otherwise = tokenize("Otherwise");
  EXPECT_TRUE(splitter().check_predicate_form(otherwise, {0, 1}));
}

// -- stage (iii) --------------------------------------------------------------

TEST(FindResultantCandidatesTest, Examples) {
  {
    Staged s("Include the date if the opt-out period expires.");
    const auto c = splitter().find_resultant_candidates(s.tokens, s.features, {3, 8});
    ASSERT_EQ(c.size(), 1u);
    EXPECT_EQ(range_text(s.tokens, c[0]), "Include the date");
  }
  {
    Staged s("If it rains, children should stay home.");
    const auto c = splitter().find_resultant_candidates(s.tokens, s.features, {0, 3});
    ASSERT_EQ(c.size(), 1u);
    EXPECT_EQ(range_text(s.tokens, c[0]), "children should stay home");
  }
}

// The "then" marker opens the second segment and stays inside it, the same
// way it does in "then click on the PayPal tab".
TEST(FindResultantCandidatesTest, TwoBranchesSplitAtThen) {
  Staged s("If X, do A and then do B.");
  const auto c = splitter().find_resultant_candidates(s.tokens, s.features, {0, 2});
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(range_text(s.tokens, c[0]), "do A");
  EXPECT_EQ(range_text(s.tokens, c[1]), "then do B");
}

TEST(FindResultantCandidatesTest, NothingLeftMeansOnlyCondition) {
  Staged s("If the order is late.");
  EXPECT_TRUE(splitter().find_resultant_candidates(s.tokens, s.features, {0, 5}).empty());
}

// -- stage (iv) ---------------------------------------------------------------

TEST(SelectResultantTest, Examples) {
  {
    Staged s("Refer to the author if you are in any doubt about the currency of this document.");
    const auto scope = *splitter().find_condition_scope(s.tokens, s.features);
    const auto c = splitter().find_resultant_candidates(s.tokens, s.features, scope);
    const auto choice = splitter().select_resultant(c, scope);
    ASSERT_TRUE(choice.resultant);
    EXPECT_EQ(range_text(s.tokens, *choice.resultant), "Refer to the author");
    EXPECT_FALSE(choice.multi_clause);
  }
  {
    Staged s("If the entered password is matched with the one stored in system, the user is authenticated.");
    const auto scope = *splitter().find_condition_scope(s.tokens, s.features);
    const auto c = splitter().find_resultant_candidates(s.tokens, s.features, scope);
    EXPECT_EQ(range_text(s.tokens, *splitter().select_resultant(c, scope).resultant),
              "the user is authenticated");
  }
  {
    const auto choice = splitter().select_resultant({}, {0, 3});
    EXPECT_FALSE(choice.resultant);
    EXPECT_FALSE(choice.multi_clause);
  }
}

TEST(SelectResultantTest, FollowingWinsOverPreceding) {
  const std::vector<TokenRange> c = {{0, 2}, {6, 9}, {10, 12}};
  const auto choice = splitter().select_resultant(c, {3, 5});
  EXPECT_EQ(choice.resultant, (TokenRange{6, 9}));
  EXPECT_TRUE(choice.multi_clause);
  EXPECT_TRUE(choice.ignored_preceding);
  const auto back = splitter().select_resultant(std::vector<TokenRange>{{0, 2}, {3, 4}}, {5, 8});
  EXPECT_EQ(back.resultant, (TokenRange{3, 4}));
}

// -- stage (v) ----------------------------------------------------------------

TEST(LabelResultantTest, Examples) {
  const auto refer = tokenize("Refer to the author");
  EXPECT_EQ(splitter().label_resultant(refer, {0, refer.size()}).label, Label::Action);
  const auto user = tokenize("the user is authenticated");
  const auto cs = splitter().label_resultant(user, {0, user.size()});
  EXPECT_EQ(cs.label, Label::Consequence);
  EXPECT_FALSE(cs.low_confidence);
  const auto row1 = tokenize("children should stay home");
  EXPECT_EQ(splitter().label_resultant(row1, {0, row1.size()}).label, Label::Action);
}

TEST(LabelResultantTest, WeakCuesMarkLowConfidence) {
  const auto t = tokenize("children can go out");
  const auto label = splitter().label_resultant(t, {0, t.size()});
  EXPECT_EQ(label.label, Label::Consequence);
  EXPECT_TRUE(label.low_confidence);

  SplitterOptions strict;
  strict.min_weak_cues = 0;
  const RuleSplitter off(Lexicons::defaults(), strict);
  EXPECT_FALSE(off.label_resultant(t, {0, t.size()}).low_confidence);
  SplitterOptions two;
  two.min_weak_cues = 2;
  EXPECT_FALSE(RuleSplitter(Lexicons::defaults(), two).label_resultant(t, {0, t.size()}).low_confidence);
}

// -- split ----------------------------------------------------------------------

TEST(SplitTest, Example908) {
  const std::string text = "Include the date if the opt-out period expires.";
  const auto out = splitter().split(text);
  EXPECT_EQ(out.result.condition, (ClauseSpan{17, 46, Label::Condition}));
  EXPECT_EQ(out.result.resultant, (ClauseSpan{0, 16, Label::Action}));
  EXPECT_EQ(out.result.sentence_class, SentenceClass::ConditionAction);
  EXPECT_FALSE(out.result.multi_clause);
}

TEST(SplitTest, NoCondition) {
  const auto out = splitter().split("Children stay home.");
  EXPECT_EQ(out.result.sentence_class, SentenceClass::NoCondition);
  EXPECT_FALSE(out.result.condition);
  EXPECT_FALSE(out.result.resultant);
}

TEST(SplitTest, PayPalIsMultiClause) {
  const std::string text = "If using PayPal for payment then click on the PayPal tab and then click Pay Now.";
  const auto out = splitter().split(text);
  EXPECT_EQ(slice(text, out.result.condition), "If using PayPal for payment");
  EXPECT_EQ(slice(text, out.result.resultant), "then click on the PayPal tab");
  EXPECT_EQ(out.result.resultant->label, Label::Action);
  EXPECT_EQ(out.result.sentence_class, SentenceClass::ConditionAction);
  EXPECT_TRUE(out.result.multi_clause);
}

TEST(SplitTest, TableOneLexicalRows) {
  const std::string row1 = "If it rains, children should stay home.";
  auto out = splitter().split(row1);
  EXPECT_EQ(out.result.sentence_class, SentenceClass::ConditionAction);
  EXPECT_EQ(slice(row1, out.result.resultant), "children should stay home");

  const std::string row2 = "Unless it rains, children can go out.";
  out = splitter().split(row2);
  EXPECT_EQ(out.result.sentence_class, SentenceClass::ConditionConsequence);
  EXPECT_TRUE(out.result.low_confidence);

  const std::string row3 = "1. Otherwise, they can go out.";
  out = splitter().split(row3);
  EXPECT_EQ(out.result.sentence_class, SentenceClass::OnlyCondition);
  EXPECT_EQ(slice(row3, out.result.condition), "Otherwise");
}

TEST(SplitTest, SentenceFinalConditionAndPassive) {
  const std::string refer = "Refer to the author if you are in any doubt about the currency of this document.";
  auto out = splitter().split(refer);
  EXPECT_EQ(slice(refer, out.result.resultant), "Refer to the author");
  EXPECT_EQ(slice(refer, out.result.condition), "if you are in any doubt about the currency of this document");

  const std::string pw = "If the entered password is matched with the one stored in system, the user is authenticated.";
  out = splitter().split(pw);
  EXPECT_EQ(out.result.sentence_class, SentenceClass::ConditionConsequence);
  EXPECT_EQ(slice(pw, out.result.resultant), "the user is authenticated");
}

TEST(SplitTest, PatternsOnlyWithExtendedOptions) {
  const RuleSplitter extended(Lexicons::defaults(), SplitterOptions::extended());
  const std::string row4 = "Come now and I'll give you the book.";
  const std::string row5 = "Do you like it? You can have it now.";
  const std::string row6 = "For rainy days, children stay home.";
  for (const auto& s : {row4, row5, row6}) EXPECT_EQ(splitter().split(s).result.sentence_class, SentenceClass::NoCondition) << s;

  auto out = extended.split(row4);
  EXPECT_EQ(slice(row4, out.result.condition), "Come now");
  EXPECT_EQ(slice(row4, out.result.resultant), "I'll give you the book");
  out = extended.split(row5);
  EXPECT_EQ(slice(row5, out.result.condition), "Do you like it");
  EXPECT_EQ(slice(row5, out.result.resultant), "You can have it now");
  out = extended.split(row6);
  EXPECT_EQ(slice(row6, out.result.condition), "For rainy days");
  EXPECT_EQ(slice(row6, out.result.resultant), "children stay home");
  EXPECT_EQ(out.result.resultant->label, Label::Consequence);

  EXPECT_EQ(extended.split("For more details, see the manual.").result.sentence_class, SentenceClass::NoCondition);
}

TEST(SplitTest, PrecedingClauseIgnoredWhenFollowingExists) {
  const std::string text = "Verify the order, if the quantity differs, notify the buyer.";
  const auto out = splitter().split(text);
  EXPECT_EQ(slice(text, out.result.resultant), "notify the buyer");
  EXPECT_TRUE(out.result.multi_clause);
  const bool noted = std::any_of(out.trace.begin(), out.trace.end(), [](const RuleTrace& t) {
    return t.note.find("unconditional action") != std::string::npos;
  });
  EXPECT_TRUE(noted);
}

TEST(SplitTest, TraceRuleIds) {
  const auto out = splitter().split("Include the date if the opt-out period expires.");
  std::vector<std::string> ids;
  for (const auto& t : out.trace) ids.push_back(t.rule_id);
  EXPECT_EQ(ids, (std::vector<std::string>{"scope.to-sentence-end", "predicate.clause", "candidates.segment",
                                           "selection.preceding", "label.imperative"}));
}

// -- properties -----------------------------------------------------------------

void check_invariants(const RuleSplitter& rs, const std::string& s) {
  const auto out = rs.split(s);
  const auto& r = out.result;
  // Class consistency.
  ASSERT_EQ(r.sentence_class == SentenceClass::NoCondition, !rs.classify_conditional(s)) << s;
  ASSERT_EQ(r.sentence_class == SentenceClass::NoCondition, !r.condition && !r.resultant) << s;
  // Span safety.
  const std::size_t len = utf8::length(s);
  for (const auto& span : {r.condition, r.resultant}) {
    if (!span) continue;
    ASSERT_LT(span->start, span->end) << s;
    ASSERT_LE(span->end, len) << s;
    const bool has_word = std::any_of(out.tokens.begin(), out.tokens.end(), [&](const Token& t) {
      return t.kind == TokenKind::Word && t.start >= span->start && t.end <= span->end;
    });
    ASSERT_TRUE(has_word) << s;
  }
  // Non-overlap.
  if (r.condition && r.resultant)
    ASSERT_TRUE(r.condition->end <= r.resultant->start || r.resultant->end <= r.condition->start) << s;
  // Stage ordering.
  for (std::size_t i = 1; i < out.trace.size(); ++i)
    ASSERT_LE(out.trace[i - 1].stage, out.trace[i].stage) << s;
  for (Stage single : {Stage::ResultantSelection, Stage::ResultantLabeling})
    ASSERT_LE(std::count_if(out.trace.begin(), out.trace.end(), [&](const RuleTrace& t) { return t.stage == single; }), 1)
        << s;
  // Determinism.
  const auto again = rs.split(s);
  ASSERT_EQ(again.result, r);
  ASSERT_EQ(again.trace.size(), out.trace.size());
}

TEST(SplitPropertyTest, GoldenCorpus) {
  const RuleSplitter extended(Lexicons::defaults(), SplitterOptions::extended());
  for (const auto& s : testing::golden_sentences()) {
    check_invariants(splitter(), s.text);
    check_invariants(extended, s.text);
  }
}

TEST(SplitPropertyTest, TenThousandFuzzedSentences) {
  const RuleSplitter extended(Lexicons::defaults(), SplitterOptions::extended());
  testing::SentenceFuzzer fuzz(2024);
  for (int i = 0; i < 10000; ++i) {
    const std::string s = fuzz.sentence();
    check_invariants(i % 2 ? extended : splitter(), s);
    if (HasFatalFailure()) return;
  }
}

TEST(SplitPropertyTest, SameResultsAcrossThreads) {
  testing::SentenceFuzzer fuzz(99);
  std::vector<std::string> inputs;
  for (int i = 0; i < 800; ++i) inputs.push_back(fuzz.sentence());
  std::vector<SplitResult> serial;
  for (const auto& s : inputs) serial.push_back(splitter().split(s).result);

  constexpr std::size_t kThreads = 4;
  std::vector<SplitResult> parallel(inputs.size());
  {
    std::vector<std::jthread> workers;
    for (std::size_t w = 0; w < kThreads; ++w)
      workers.emplace_back([&, w] {
        for (std::size_t i = w; i < inputs.size(); i += kThreads) parallel[i] = splitter().split(inputs[i]).result;
      });
  }
  EXPECT_EQ(serial, parallel);
}

}  // namespace
}  // namespace condsplit
