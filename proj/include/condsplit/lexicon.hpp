#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "condsplit/tokenizer.hpp"

namespace condsplit {

// A list of single- or multi-word entries, matched case-insensitively
// against token sequences. Text format: one entry per line, words separated
// by spaces, '#' starts a comment.
class Lexicon {
 public:
  Lexicon() = default;

  static Lexicon parse(std::string name, std::string_view text);
  static Lexicon load(const std::filesystem::path& path);

  const std::string& name() const { return name_; }

  // Entries in file order, lowercased, words joined by single spaces.
  const std::vector<std::string>& entries() const { return entries_; }

  bool contains(std::string_view word) const;

  // Length in tokens of the longest entry matching at tokens[pos], 0 if none.
  std::size_t match_at(std::span<const Token> tokens, std::size_t pos) const;

  std::size_t size() const { return entries_.size(); }

 private:
  std::string name_;
  std::vector<std::string> entries_;
  std::vector<std::vector<std::string>> phrases_;
};

// Every lexicon the feature layer and the rule stages consult.
struct Lexicons {
  Lexicon subordinators;
  Lexicon negative_subordinators;
  Lexicon discourse_markers;
  Lexicon exclusions;
  Lexicon obligation_modals;
  Lexicon then_markers;
  Lexicon imperative_verbs;
  Lexicon imperative_adverbs;
  Lexicon weak_action_cues;
  Lexicon coordinators;
  Lexicon subject_pronouns;
  Lexicon auxiliaries;
  Lexicon for_phrase_blockers;

  // Built-in lexicons, parsed once on first use.
  static const Lexicons& defaults();

  // Defaults, with each "<name>.txt" found in `dir` replacing its lexicon.
  static Lexicons load_dir(const std::filesystem::path& dir);

  // (file stem, lexicon) for every member, in declaration order.
  std::vector<std::pair<std::string_view, const Lexicon*>> all() const;
};

// Raw text of a built-in lexicon file, keyed by file stem. Empty if unknown.
std::string_view embedded_lexicon(std::string_view stem);

std::string ascii_lower(std::string_view text);

}  // namespace condsplit
