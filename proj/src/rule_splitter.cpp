#include "condsplit/rule_splitter.hpp"

#include <algorithm>

namespace condsplit {

namespace {

bool is_word(const Token& token) { return token.kind == TokenKind::Word; }

bool is_content(const Token& token) { return token.kind != TokenKind::Punctuation; }

std::string range_text(std::span<const Token> tokens, TokenRange range) {
  std::string out;
  for (std::size_t i = range.begin; i < range.end && i < tokens.size(); ++i)
    out += (out.empty() ? "" : " ") + tokens[i].text;
  return out;
}

// Shrinks `range` so it ends on a word or number token.
TokenRange trim_trailing_punct(std::span<const Token> tokens, TokenRange range) {
  while (range.end > range.begin && !is_content(tokens[range.end - 1])) --range.end;
  return range;
}

ClauseSpan to_span(std::span<const Token> tokens, TokenRange range, Label label) {
  return {tokens[range.begin].start, tokens[range.end - 1].end, label};
}

}  // namespace

std::string_view to_string(Stage stage) {
  switch (stage) {
    case Stage::Scope:
      return "scope";
    case Stage::PredicateForm:
      return "predicate_form";
    case Stage::Candidates:
      return "candidates";
    case Stage::ResultantSelection:
      return "resultant_selection";
    case Stage::ResultantLabeling:
      return "resultant_labeling";
  }
  return "scope";
}

RuleSplitter::RuleSplitter(Lexicons lexicons, SplitterOptions options)
    : lexicons_(std::move(lexicons)), options_(options) {}

std::size_t RuleSplitter::indicator_length_at(std::span<const Token> tokens,
                                              std::size_t pos) const {
  return std::max({lexicons_.subordinators.match_at(tokens, pos),
                   lexicons_.negative_subordinators.match_at(tokens, pos),
                   lexicons_.discourse_markers.match_at(tokens, pos)});
}

std::vector<ConditionScope> RuleSplitter::find_condition_scopes(
    std::span<const Token> tokens, std::span<const TokenFeatures> features) const {
  std::vector<ConditionScope> scopes;
  for (std::size_t i = 0; i < tokens.size() && i < features.size(); ++i) {
    const TokenFeatures& f = features[i];
    if (!f.is_condition_indicator) continue;
    if (!scopes.empty() && scopes.back().range.contains(i)) continue;

    ConditionScope scope;
    scope.kind = f.indicator_kind;
    const std::size_t after = std::min(i + f.indicator_length, tokens.size());
    if (*f.indicator_kind == IndicatorKind::DiscourseMarker) {
      // The antecedent is in an earlier sentence; only the marker is scoped.
      scope.range = {i, after};
      scope.rule_id = "scope.discourse-marker";
    } else {
      std::size_t end = after;
      while (end < tokens.size() && !features[end].is_clause_separator &&
             !features[end].is_then_marker)
        ++end;
      scope.range = trim_trailing_punct(tokens, {i, end});
      scope.rule_id = end < tokens.size() ? (features[end].is_then_marker ? "scope.to-then-marker"
                                                                          : "scope.to-separator")
                                          : "scope.to-sentence-end";
    }
    scopes.push_back(std::move(scope));
  }
  return scopes;
}

std::optional<TokenRange> RuleSplitter::find_condition_scope(
    std::span<const Token> tokens, std::span<const TokenFeatures> features) const {
  const auto scopes = find_condition_scopes(tokens, features);
  if (scopes.empty()) return std::nullopt;
  return scopes.front().range;
}

std::optional<ConditionScope> RuleSplitter::find_pattern_scope(
    std::span<const Token> tokens) const {
  std::size_t first = 0;
  while (first < tokens.size() && !is_word(tokens[first])) ++first;
  if (first >= tokens.size()) return std::nullopt;

  auto has_word_after = [&](std::size_t pos) {
    return std::any_of(tokens.begin() + static_cast<std::ptrdiff_t>(pos), tokens.end(),
                       [](const Token& t) { return is_word(t); });
  };

  if (options_.interrogative_pattern) {
    // A question followed by a statement: the question poses the condition.
    for (std::size_t i = first + 1; i < tokens.size(); ++i) {
      if (tokens[i].text == "?" && has_word_after(i + 1)) {
        const TokenRange range = trim_trailing_punct(tokens, {first, i});
        if (!range.empty()) return ConditionScope{range, std::nullopt, "scope.pattern.interrogative"};
        break;
      }
    }
  }

  if (options_.for_phrase_pattern && ascii_lower(tokens[first].text) == "for" &&
      first + 1 < tokens.size() && !lexicons_.for_phrase_blockers.contains(tokens[first + 1].text)) {
    for (std::size_t i = first + 2; i < tokens.size(); ++i) {
      if (tokens[i].text == "," && has_word_after(i + 1))
        return ConditionScope{{first, i}, std::nullopt, "scope.pattern.for-phrase"};
      if (!is_content(tokens[i])) break;
    }
  }

  if (options_.imperative_and_pattern && detect_imperative(tokens, first, lexicons_)) {
    // "<imperative> ... and <subject> ...": the instruction is the condition.
    for (std::size_t i = first + 1; i + 1 < tokens.size(); ++i) {
      if (ascii_lower(tokens[i].text) == "and" &&
          lexicons_.subject_pronouns.contains(tokens[i + 1].text)) {
        const TokenRange range = trim_trailing_punct(tokens, {first, i});
        if (!range.empty())
          return ConditionScope{range, std::nullopt, "scope.pattern.imperative-and"};
        break;
      }
    }
  }
  return std::nullopt;
}

bool RuleSplitter::check_predicate_form(std::span<const Token> tokens,
                                        TokenRange condition) const {
  if (condition.empty() || condition.end > tokens.size()) return false;

  const std::size_t indicator = indicator_length_at(tokens, condition.begin);
  if (indicator > 0 && lexicons_.discourse_markers.match_at(tokens, condition.begin) == indicator &&
      condition.size() == indicator)
    return true;

  std::string lowered;
  std::size_t words_after_indicator = 0;
  for (std::size_t i = condition.begin; i < condition.end; ++i) {
    if (!is_content(tokens[i])) continue;
    lowered += (lowered.empty() ? "" : " ") + ascii_lower(tokens[i].text);
    if (i >= condition.begin + indicator && is_word(tokens[i])) ++words_after_indicator;
  }
  if (words_after_indicator == 0) return false;
  const auto& excluded = lexicons_.exclusions.entries();
  return std::find(excluded.begin(), excluded.end(), lowered) == excluded.end();
}

RuleSplitter::Detection RuleSplitter::detect(std::span<const Token> tokens,
                                             std::span<const TokenFeatures> features,
                                             std::vector<RuleTrace>* trace) const {
  std::vector<ConditionScope> scopes = find_condition_scopes(tokens, features);
  std::vector<bool> accepted;
  for (const auto& scope : scopes) accepted.push_back(check_predicate_form(tokens, scope.range));

  if (std::none_of(accepted.begin(), accepted.end(), [](bool ok) { return ok; })) {
    if (auto pattern = find_pattern_scope(tokens); pattern) {
      accepted.push_back(check_predicate_form(tokens, pattern->range));
      scopes.push_back(std::move(*pattern));
    }
  }

  if (trace) {
    for (const auto& scope : scopes) {
      const std::string kind = scope.kind ? std::string(to_string(*scope.kind)) : "pattern";
      trace->push_back({Stage::Scope, scope.rule_id, scope.range,
                        kind + ": " + range_text(tokens, scope.range)});
    }
    for (std::size_t k = 0; k < scopes.size(); ++k) {
      const auto& scope = scopes[k];
      std::string rule = accepted[k] ? "predicate.clause" : "predicate.fragment";
      if (accepted[k] && scope.kind == IndicatorKind::DiscourseMarker)
        rule = "predicate.discourse-marker";
      trace->push_back({Stage::PredicateForm, rule, scope.range,
                        accepted[k] ? "accepted" : "demoted: no predicate beyond the indicator"});
    }
  }

  Detection detection;
  for (std::size_t k = 0; k < scopes.size(); ++k)
    if (accepted[k]) detection.valid.push_back(scopes[k]);
  if (!detection.valid.empty()) {
    detection.primary = detection.valid.front();
    const TokenRange range = detection.primary->range;
    for (std::size_t i = range.begin + 1; i < range.end; ++i)
      if (features[i].is_condition_indicator) ++detection.nested_indicators;
  }
  return detection;
}

bool RuleSplitter::classify_conditional(std::string_view sentence) const {
  const auto tokens = tokenize(sentence);
  const auto features = extract_features(tokens, lexicons_);
  return detect(tokens, features, nullptr).primary.has_value();
}

std::vector<TokenRange> RuleSplitter::find_resultant_candidates(
    std::span<const Token> tokens, std::span<const TokenFeatures> features,
    TokenRange condition) const {
  std::vector<bool> blocked(tokens.size(), false);
  auto block = [&](TokenRange range) {
    for (std::size_t i = range.begin; i < range.end && i < tokens.size(); ++i) blocked[i] = true;
  };
  block(condition);
  for (const auto& scope : detect(tokens, features, nullptr).valid) block(scope.range);

  auto is_coordinator = [&](std::size_t i) {
    return is_word(tokens[i]) && lexicons_.coordinators.contains(tokens[i].text);
  };
  auto is_filler = [&](std::size_t i) { return !is_content(tokens[i]) || is_coordinator(i); };

  std::vector<TokenRange> candidates;
  auto emit = [&](std::size_t begin, std::size_t end) {
    while (begin < end && is_filler(begin)) ++begin;
    while (end > begin && is_filler(end - 1)) --end;
    bool has_word = false;
    for (std::size_t i = begin; i < end; ++i)
      has_word = has_word || (is_word(tokens[i]) && !features[i].is_then_marker);
    if (has_word) candidates.push_back({begin, end});
  };

  std::size_t begin = 0;
  for (std::size_t i = 0; i <= tokens.size(); ++i) {
    if (i == tokens.size() || blocked[i] || features[i].is_clause_separator) {
      emit(begin, i);
      begin = i + 1;
    } else if (features[i].is_then_marker && i > begin) {
      emit(begin, i);
      begin = i;
    }
  }
  return candidates;
}

ResultantChoice RuleSplitter::select_resultant(std::span<const TokenRange> candidates,
                                               TokenRange condition) const {
  ResultantChoice choice;
  choice.multi_clause = candidates.size() > 1;
  std::optional<TokenRange> preceding;
  for (const TokenRange& candidate : candidates) {
    if (candidate.begin >= condition.end) {
      choice.resultant = candidate;
      break;
    }
    if (candidate.end <= condition.begin) preceding = candidate;
  }
  if (choice.resultant)
    choice.ignored_preceding = preceding.has_value();
  else
    choice.resultant = preceding;
  return choice;
}

ResultantLabel RuleSplitter::label_resultant(std::span<const Token> tokens,
                                             TokenRange resultant) const {
  if (detect_imperative(tokens, resultant.begin, lexicons_) ||
      detect_obligation(tokens, resultant, lexicons_))
    return {Label::Action, false};

  std::size_t cues = 0;
  for (std::size_t i = resultant.begin; i < resultant.end && i < tokens.size(); ++i) {
    const std::size_t len = lexicons_.weak_action_cues.match_at(tokens, i);
    if (len > 0 && i + len <= resultant.end) ++cues;
  }
  return {Label::Consequence, options_.min_weak_cues > 0 && cues >= options_.min_weak_cues};
}

SplitOutput RuleSplitter::split(std::string_view sentence) const {
  SplitOutput out;
  out.tokens = tokenize(sentence);
  const std::span<const Token> tokens = out.tokens;
  const auto features = extract_features(tokens, lexicons_);

  const Detection detection = detect(tokens, features, &out.trace);
  if (!detection.primary) {
    out.result = make_split_result(std::nullopt, std::nullopt);
    return out;
  }
  const ConditionScope& primary = *detection.primary;

  const auto candidates = find_resultant_candidates(tokens, features, primary.range);
  for (const TokenRange& candidate : candidates)
    out.trace.push_back({Stage::Candidates, "candidates.segment", candidate, range_text(tokens, candidate)});

  ResultantChoice choice;
  if (primary.kind == IndicatorKind::DiscourseMarker) {
    choice.multi_clause = candidates.size() > 1;
    out.trace.push_back({Stage::ResultantSelection, "selection.discourse-marker", primary.range,
                         "antecedent lies outside the sentence; no resultant linked"});
  } else {
    choice = select_resultant(candidates, primary.range);
    std::string rule = "selection.none";
    if (choice.resultant)
      rule = choice.resultant->begin >= primary.range.end ? "selection.following" : "selection.preceding";
    std::string note = choice.resultant ? range_text(tokens, *choice.resultant) : "only condition";
    if (choice.ignored_preceding) note += "; preceding clause left as unconditional action";
    if (choice.multi_clause) note += "; multiple candidates";
    out.trace.push_back({Stage::ResultantSelection, rule, choice.resultant.value_or(primary.range), note});
  }

  std::optional<ClauseSpan> resultant;
  bool low_confidence = false;
  if (choice.resultant) {
    const ResultantLabel label = label_resultant(tokens, *choice.resultant);
    std::string rule = "label.consequence";
    if (label.label == Label::Action)
      rule = detect_imperative(tokens, choice.resultant->begin, lexicons_) ? "label.imperative"
                                                                         : "label.obligation";
    else if (label.low_confidence)
      rule = "label.weak-action-cues";
    out.trace.push_back({Stage::ResultantLabeling, rule, *choice.resultant,
                         std::string(to_code(label.label))});
    resultant = to_span(tokens, *choice.resultant, label.label);
    low_confidence = label.low_confidence;
  }

  const bool multi = choice.multi_clause || detection.valid.size() > 1 || detection.nested_indicators > 0;
  out.result = make_split_result(to_span(tokens, primary.range, Label::Condition), resultant,
                                 low_confidence, multi);
  return out;
}

}  // namespace condsplit
