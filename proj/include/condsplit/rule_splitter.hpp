#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "condsplit/annotation.hpp"
#include "condsplit/features.hpp"
#include "condsplit/lexicon.hpp"
#include "condsplit/tokenizer.hpp"

namespace condsplit {

// The five rule stages, in firing order.
enum class Stage {
  Scope,               // (i) extent of the conditional clause
  PredicateForm,       // (ii) the conditional clause carries a real predicate
  Candidates,          // (iii) clauses that could be linked to the condition
  ResultantSelection,  // (iv) resultant chosen among the candidates
  ResultantLabeling,   // (v) Action or Consequence
};

std::string_view to_string(Stage stage);

struct RuleTrace {
  Stage stage = Stage::Scope;
  std::string rule_id;
  TokenRange tokens;
  std::string note;
};

struct SplitterOptions {
  // Non-lexical conditional forms. All off by default.
  bool imperative_and_pattern = false;  // "Come now and I'll give you the book."
  bool interrogative_pattern = false;   // "Do you like it? You can have it now."
  bool for_phrase_pattern = false;      // "For rainy days, children stay home."

  // Weak action cues needed before a Consequence is flagged low-confidence.
  std::size_t min_weak_cues = 1;

  static SplitterOptions extended() {
    SplitterOptions options;
    options.imperative_and_pattern = true;
    options.interrogative_pattern = true;
    options.for_phrase_pattern = true;
    return options;
  }
};

struct ConditionScope {
  TokenRange range;
  // Empty for scopes found by an extended pattern rule.
  std::optional<IndicatorKind> kind;
  std::string rule_id;
};

struct ResultantChoice {
  std::optional<TokenRange> resultant;
  bool multi_clause = false;
  // A candidate before the condition was passed over for one after it.
  bool ignored_preceding = false;
};

struct ResultantLabel {
  Label label = Label::Consequence;
  bool low_confidence = false;
};

struct SplitOutput {
  SplitResult result;
  std::vector<Token> tokens;
  std::vector<RuleTrace> trace;
};

// Rule-based conditional sentence splitter. Immutable after construction;
// every member function is const and safe to call concurrently.
class RuleSplitter {
 public:
  RuleSplitter() : RuleSplitter(Lexicons::defaults()) {}
  explicit RuleSplitter(Lexicons lexicons, SplitterOptions options = {});

  const Lexicons& lexicons() const { return lexicons_; }
  const SplitterOptions& options() const { return options_; }

  // Throws EmptyInputError on a blank sentence.
  bool classify_conditional(std::string_view sentence) const;

  // Stage (i). Lexical scopes in document order; an indicator nested inside
  // an earlier scope does not open a scope of its own.
  std::vector<ConditionScope> find_condition_scopes(std::span<const Token> tokens,
                                                    std::span<const TokenFeatures> features) const;

  std::optional<TokenRange> find_condition_scope(std::span<const Token> tokens,
                                                 std::span<const TokenFeatures> features) const;

  // Stage (i), extended pattern rules. Consulted only when no lexical scope
  // survives stage (ii).
  std::optional<ConditionScope> find_pattern_scope(std::span<const Token> tokens) const;

  // Stage (ii).
  bool check_predicate_form(std::span<const Token> tokens, TokenRange condition) const;

  // Stage (iii). Segments outside every condition scope, split at clause
  // separators and "then" markers (the marker opens the next segment), with
  // edge punctuation and coordinators trimmed.
  std::vector<TokenRange> find_resultant_candidates(std::span<const Token> tokens,
                                                    std::span<const TokenFeatures> features,
                                                    TokenRange condition) const;

  // Stage (iv). Nearest following candidate, else nearest preceding.
  ResultantChoice select_resultant(std::span<const TokenRange> candidates,
                                   TokenRange condition) const;

  // Stage (v).
  ResultantLabel label_resultant(std::span<const Token> tokens, TokenRange resultant) const;

  SplitOutput split(std::string_view sentence) const;

 private:
  struct Detection {
    std::optional<ConditionScope> primary;
    std::vector<ConditionScope> valid;
    std::size_t nested_indicators = 0;
  };

  Detection detect(std::span<const Token> tokens, std::span<const TokenFeatures> features,
                   std::vector<RuleTrace>* trace) const;

  std::size_t indicator_length_at(std::span<const Token> tokens, std::size_t pos) const;

  Lexicons lexicons_;
  SplitterOptions options_;
};

}  // namespace condsplit
