#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "condsplit/annotation.hpp"

namespace condsplit {

struct LabelCounts {
  std::array<std::size_t, kAllLabels.size()> counts{};

  std::size_t& operator[](Label label) { return counts[label_index(label)]; }
  std::size_t operator[](Label label) const { return counts[label_index(label)]; }

  // Clause labels count per span, sentence labels per sentence.
  void add(const AnnotatedSentence& sentence);
  LabelCounts& operator+=(const LabelCounts& other);

  friend bool operator==(const LabelCounts&, const LabelCounts&) = default;
};

struct NamedSplit {
  std::string name;
  std::vector<AnnotatedSentence> sentences;
};

struct CorpusStats {
  std::vector<std::pair<std::string, LabelCounts>> splits;
  LabelCounts total;
};

CorpusStats corpus_stats(std::span<const NamedSplit> splits);

// Columns in the order CD, CS, AC, OC, NC, UA, followed by a Total row.
inline constexpr std::array<Label, 6> kStatsColumns = {
    Label::Condition,     Label::Consequence, Label::Action,
    Label::OnlyCondition, Label::NoCondition, Label::UnconditionalAction,
};

std::string render_stats_table(const CorpusStats& stats);
std::string render_stats_json(const CorpusStats& stats);

}  // namespace condsplit
