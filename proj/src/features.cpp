#include "condsplit/features.hpp"

#include <algorithm>

namespace condsplit {

namespace {

bool is_word(const Token& token) { return token.kind == TokenKind::Word; }

bool is_content(const Token& token) { return token.kind != TokenKind::Punctuation; }

bool ends_in_question(std::span<const Token> tokens, std::size_t from) {
  for (std::size_t i = from; i < tokens.size(); ++i) {
    const std::string& t = tokens[i].text;
    if (tokens[i].kind == TokenKind::Punctuation && (t == "?" || t == "." || t == "!"))
      return t == "?";
  }
  return false;
}

// Index of the imperative verb opening the clause at `clause_start`, if any.
std::optional<std::size_t> imperative_verb(std::span<const Token> tokens,
                                           std::size_t clause_start, const Lexicons& lex) {
  std::size_t i = clause_start;
  // List numbering ("1.", "(a)") and leading adverbs may precede the verb.
  while (i < tokens.size()) {
    if (!is_word(tokens[i])) {
      ++i;
      continue;
    }
    if (const std::size_t adverb = lex.imperative_adverbs.match_at(tokens, i); adverb > 0) {
      i += adverb;
      continue;
    }
    break;
  }
  if (i >= tokens.size() || !lex.imperative_verbs.contains(tokens[i].text)) return std::nullopt;

  if (i + 1 < tokens.size()) {
    const Token& next = tokens[i + 1];
    // "Do you like it?" is a question, not an instruction; "Do it now." is.
    if (lex.auxiliaries.contains(tokens[i].text) && lex.subject_pronouns.contains(next.text) &&
        ends_in_question(tokens, i))
      return std::nullopt;
    // "Report is generated ..." reads the verb candidate as a noun subject.
    if (lex.auxiliaries.contains(next.text)) return std::nullopt;
  }
  return i;
}

bool opens_clause(const Token& token) {
  if (is_clause_separator(token)) return true;
  return token.kind == TokenKind::Punctuation &&
         (token.text == "." || token.text == "?" || token.text == "!" || token.text == ":");
}

}  // namespace

std::string_view to_string(IndicatorKind kind) {
  switch (kind) {
    case IndicatorKind::Subordinator:
      return "subordinator";
    case IndicatorKind::NegativeSubordinator:
      return "negative_subordinator";
    case IndicatorKind::DiscourseMarker:
      return "discourse_marker";
  }
  return "subordinator";
}

bool is_clause_separator(const Token& token) {
  if (token.kind != TokenKind::Punctuation) return false;
  static constexpr std::string_view kSeparators[] = {",", ";", "-", "‒", "–",
                                                     "—", "―"};
  return std::find(std::begin(kSeparators), std::end(kSeparators), token.text) !=
         std::end(kSeparators);
}

std::vector<TokenFeatures> extract_features(std::span<const Token> tokens, const Lexicons& lex) {
  std::vector<TokenFeatures> features(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    TokenFeatures& f = features[i];
    f.is_clause_separator = is_clause_separator(tokens[i]);
    if (!is_word(tokens[i])) continue;

    f.is_then_marker = lex.then_markers.match_at(tokens, i) > 0;
    if (const std::size_t len = lex.obligation_modals.match_at(tokens, i); len > 0) {
      f.is_obligation_modal = true;
      f.obligation_length = len;
    }

    // Exclusion phrases only match as a whole clause: "if any" followed by
    // punctuation or the sentence end, not "if any doubt exists".
    if (const std::size_t len = lex.exclusions.match_at(tokens, i); len > 0) {
      if (i + len == tokens.size() || !is_content(tokens[i + len])) {
        f.excluded_length = len;
        continue;
      }
    }

    struct Candidate {
      const Lexicon* lexicon;
      IndicatorKind kind;
    };
    const Candidate candidates[] = {
        {&lex.subordinators, IndicatorKind::Subordinator},
        {&lex.negative_subordinators, IndicatorKind::NegativeSubordinator},
        {&lex.discourse_markers, IndicatorKind::DiscourseMarker},
    };
    for (const auto& candidate : candidates) {
      const std::size_t len = candidate.lexicon->match_at(tokens, i);
      if (len > f.indicator_length) {
        f.is_condition_indicator = true;
        f.indicator_kind = candidate.kind;
        f.indicator_length = len;
      }
    }
  }

  std::size_t clause_start = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (opens_clause(tokens[i])) {
      clause_start = i + 1;
      continue;
    }
    if (features[i].is_then_marker) clause_start = i;
    if (i == clause_start || features[i].is_then_marker) {
      if (const auto verb = imperative_verb(tokens, clause_start, lex); verb) {
        const bool crosses_boundary =
            std::any_of(tokens.begin() + static_cast<std::ptrdiff_t>(clause_start),
                        tokens.begin() + static_cast<std::ptrdiff_t>(*verb),
                        [](const Token& t) { return opens_clause(t); });
        if (!crosses_boundary) features[*verb].is_imperative_candidate = true;
      }
    }
  }
  return features;
}

bool detect_imperative(std::span<const Token> tokens, std::size_t clause_start,
                       const Lexicons& lex) {
  return clause_start < tokens.size() && imperative_verb(tokens, clause_start, lex).has_value();
}

bool detect_obligation(std::span<const Token> tokens, TokenRange clause, const Lexicons& lex) {
  const std::size_t end = std::min(clause.end, tokens.size());
  for (std::size_t i = clause.begin; i < end; ++i) {
    const std::size_t len = lex.obligation_modals.match_at(tokens, i);
    if (len > 0 && i + len <= end) return true;
  }
  return false;
}

}  // namespace condsplit
