#include "condsplit/corpus_stats.hpp"

#include <iomanip>
#include <json.hpp>
#include <sstream>

namespace condsplit {

namespace {

std::string with_thousands(std::size_t value) {
  std::string digits = std::to_string(value);
  for (int i = static_cast<int>(digits.size()) - 3; i > 0; i -= 3) digits.insert(static_cast<std::size_t>(i), ",");
  return digits;
}

}  // namespace

void LabelCounts::add(const AnnotatedSentence& sentence) {
  for (const ClauseSpan& span : sentence.spans) ++(*this)[span.label];
  if (sentence.sentence_label) ++(*this)[*sentence.sentence_label];
}

LabelCounts& LabelCounts::operator+=(const LabelCounts& other) {
  for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += other.counts[i];
  return *this;
}

CorpusStats corpus_stats(std::span<const NamedSplit> splits) {
  CorpusStats stats;
  for (const NamedSplit& split : splits) {
    LabelCounts counts;
    for (const auto& sentence : split.sentences) counts.add(sentence);
    stats.total += counts;
    stats.splits.emplace_back(split.name, counts);
  }
  return stats;
}

std::string render_stats_table(const CorpusStats& stats) {
  std::size_t name_width = 5;
  for (const auto& [name, counts] : stats.splits) name_width = std::max(name_width, name.size());
  constexpr int kCol = 7;

  std::ostringstream out;
  out << std::left << std::setw(static_cast<int>(name_width)) << "Data";
  for (Label label : kStatsColumns) out << " |" << std::right << std::setw(kCol) << to_code(label);
  out << '\n' << std::string(name_width, '-');
  for (std::size_t i = 0; i < kStatsColumns.size(); ++i) out << "-+" << std::string(kCol, '-');
  out << '\n';

  auto row = [&](const std::string& name, const LabelCounts& counts) {
    out << std::left << std::setw(static_cast<int>(name_width)) << name;
    for (Label label : kStatsColumns)
      out << " |" << std::right << std::setw(kCol) << with_thousands(counts[label]);
    out << '\n';
  };
  for (const auto& [name, counts] : stats.splits) row(name, counts);
  row("Total", stats.total);
  return out.str();
}

std::string render_stats_json(const CorpusStats& stats) {
  auto counts_json = [](const LabelCounts& counts) {
    nlohmann::ordered_json obj;
    for (Label label : kStatsColumns) obj[std::string(to_code(label))] = counts[label];
    return obj;
  };
  nlohmann::ordered_json doc;
  doc["splits"] = nlohmann::ordered_json::array();
  for (const auto& [name, counts] : stats.splits)
    doc["splits"].push_back({{"name", name}, {"counts", counts_json(counts)}});
  doc["total"] = counts_json(stats.total);
  return doc.dump(2) + "\n";
}

}  // namespace condsplit
