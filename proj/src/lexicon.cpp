#include "condsplit/lexicon.hpp"

#include <fstream>
#include <sstream>

#include "condsplit/errors.hpp"

namespace condsplit {

std::string ascii_lower(std::string_view text) {
  std::string out(text);
  for (char& c : out)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return out;
}

Lexicon Lexicon::parse(std::string name, std::string_view text) {
  Lexicon lexicon;
  lexicon.name_ = std::move(name);
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::vector<std::string> phrase;
    for (std::string word; words >> word;) phrase.push_back(ascii_lower(word));
    if (phrase.empty()) continue;

    std::string joined;
    for (const auto& word : phrase) joined += (joined.empty() ? "" : " ") + word;
    bool duplicate = false;
    for (const auto& existing : lexicon.entries_) duplicate = duplicate || existing == joined;
    if (duplicate) continue;
    lexicon.entries_.push_back(std::move(joined));
    lexicon.phrases_.push_back(std::move(phrase));
  }
  return lexicon;
}

Lexicon Lexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open lexicon file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(path.stem().string(), buffer.str());
}

bool Lexicon::contains(std::string_view word) const {
  const std::string lowered = ascii_lower(word);
  for (const auto& entry : entries_)
    if (entry == lowered) return true;
  return false;
}

std::size_t Lexicon::match_at(std::span<const Token> tokens, std::size_t pos) const {
  std::size_t best = 0;
  for (const auto& phrase : phrases_) {
    if (phrase.size() <= best || pos + phrase.size() > tokens.size()) continue;
    bool ok = true;
    for (std::size_t k = 0; k < phrase.size() && ok; ++k)
      ok = ascii_lower(tokens[pos + k].text) == phrase[k];
    if (ok) best = phrase.size();
  }
  return best;
}

namespace {

template <typename L, typename F>
void for_each_member(L& lex, F&& f) {
  f("subordinators", lex.subordinators);
  f("negative_subordinators", lex.negative_subordinators);
  f("discourse_markers", lex.discourse_markers);
  f("exclusions", lex.exclusions);
  f("obligation_modals", lex.obligation_modals);
  f("then_markers", lex.then_markers);
  f("imperative_verbs", lex.imperative_verbs);
  f("imperative_adverbs", lex.imperative_adverbs);
  f("weak_action_cues", lex.weak_action_cues);
  f("coordinators", lex.coordinators);
  f("subject_pronouns", lex.subject_pronouns);
  f("auxiliaries", lex.auxiliaries);
  f("for_phrase_blockers", lex.for_phrase_blockers);
}

Lexicons build_defaults() {
  Lexicons lex;
  for_each_member(lex, [](std::string_view stem, Lexicon& member) {
    member = Lexicon::parse(std::string(stem), embedded_lexicon(stem));
  });
  return lex;
}

}  // namespace

const Lexicons& Lexicons::defaults() {
  static const Lexicons instance = build_defaults();
  return instance;
}

Lexicons Lexicons::load_dir(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir))
    throw Error("lexicon directory not found: " + dir.string());
  Lexicons lex = defaults();
  for_each_member(lex, [&](std::string_view stem, Lexicon& member) {
    const auto path = dir / (std::string(stem) + ".txt");
    if (std::filesystem::exists(path)) member = Lexicon::load(path);
  });
  return lex;
}

std::vector<std::pair<std::string_view, const Lexicon*>> Lexicons::all() const {
  std::vector<std::pair<std::string_view, const Lexicon*>> out;
  for_each_member(*this, [&](std::string_view stem, const Lexicon& member) {
    out.emplace_back(stem, &member);
  });
  return out;
}

}  // namespace condsplit
