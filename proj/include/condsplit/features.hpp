#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "condsplit/lexicon.hpp"
#include "condsplit/tokenizer.hpp"

namespace condsplit {

enum class IndicatorKind { Subordinator, NegativeSubordinator, DiscourseMarker };

std::string_view to_string(IndicatorKind kind);

// Half-open token index range.
struct TokenRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  bool empty() const { return begin >= end; }
  std::size_t size() const { return empty() ? 0 : end - begin; }
  bool contains(std::size_t index) const { return index >= begin && index < end; }

  friend bool operator==(const TokenRange&, const TokenRange&) = default;
};

// Per-token lexical features. Multiword entries ("in case", "have to") are
// marked on their first token, with the entry length in tokens.
struct TokenFeatures {
  bool is_condition_indicator = false;
  std::optional<IndicatorKind> indicator_kind;
  std::size_t indicator_length = 0;
  bool is_obligation_modal = false;
  std::size_t obligation_length = 0;
  bool is_imperative_candidate = false;
  bool is_then_marker = false;
  bool is_clause_separator = false;
  // First token of an exclusion phrase such as "if possible".
  std::size_t excluded_length = 0;

  friend bool operator==(const TokenFeatures&, const TokenFeatures&) = default;
};

bool is_clause_separator(const Token& token);

std::vector<TokenFeatures> extract_features(std::span<const Token> tokens,
                                            const Lexicons& lexicons = Lexicons::defaults());

// True when the clause starting at `clause_start` opens with a base-form verb
// from the imperative lexicon, optionally after adverbs like "then" or
// "please". Inverted questions ("Do you ...") and noun readings followed by
// an auxiliary ("Report is ...") are rejected.
bool detect_imperative(std::span<const Token> tokens, std::size_t clause_start,
                       const Lexicons& lexicons = Lexicons::defaults());

bool detect_obligation(std::span<const Token> tokens, TokenRange clause,
                       const Lexicons& lexicons = Lexicons::defaults());

}  // namespace condsplit
