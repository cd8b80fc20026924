#include "condsplit/label.hpp"

namespace condsplit {

namespace {

struct LabelNames {
  Label label;
  std::string_view name;
  std::string_view code;
};

constexpr std::array<LabelNames, 6> kNames = {{
    {Label::Condition, "Condition", "CD"},
    {Label::Action, "Action", "AC"},
    {Label::Consequence, "Consequence", "CS"},
    {Label::OnlyCondition, "Only-Condition", "OC"},
    {Label::NoCondition, "No Condition", "NC"},
    {Label::UnconditionalAction, "Unconditional-Action", "UA"},
}};

}  // namespace

std::string_view to_string(Label label) { return kNames[label_index(label)].name; }

std::string_view to_code(Label label) { return kNames[label_index(label)].code; }

std::optional<Label> parse_label(std::string_view text) {
  for (const auto& entry : kNames)
    if (text == entry.name || text == entry.code) return entry.label;
  return std::nullopt;
}

}  // namespace condsplit
