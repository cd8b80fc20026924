#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace condsplit {

// Annotation categories. Condition, Action, Consequence and
// UnconditionalAction label clauses; OnlyCondition and NoCondition label
// whole sentences.
enum class Label {
  Condition,
  Action,
  Consequence,
  OnlyCondition,
  NoCondition,
  UnconditionalAction,
};

inline constexpr std::array<Label, 6> kAllLabels = {
    Label::Condition,     Label::Action,     Label::Consequence,
    Label::OnlyCondition, Label::NoCondition, Label::UnconditionalAction,
};

// Doccano label string, e.g. "Condition", "No Condition".
std::string_view to_string(Label label);

// Two-letter code: CD, AC, CS, OC, NC, UA.
std::string_view to_code(Label label);

// Accepts both the Doccano string and the two-letter code.
std::optional<Label> parse_label(std::string_view text);

constexpr bool is_clause_level(Label label) {
  return label == Label::Condition || label == Label::Action ||
         label == Label::Consequence || label == Label::UnconditionalAction;
}

constexpr bool is_sentence_level(Label label) { return !is_clause_level(label); }

constexpr std::size_t label_index(Label label) {
  return static_cast<std::size_t>(label);
}

}  // namespace condsplit
