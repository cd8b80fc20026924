#include "condsplit/iob.hpp"

#include <algorithm>

#include "condsplit/errors.hpp"
#include "condsplit/utf8.hpp"

namespace condsplit {

namespace {

std::string_view trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r\n");
  return text.substr(first, last - first + 1);
}

TokenKind classify_token(std::string_view text) {
  try {
    const auto tokens = tokenize(text);
    if (tokens.size() == 1) return tokens.front().kind;
    for (const auto& token : tokens)
      if (token.kind != TokenKind::Punctuation) return TokenKind::Word;
  } catch (const Error&) {
  }
  return TokenKind::Punctuation;
}

std::string join_errors(const std::vector<std::string>& errors) {
  std::string out;
  for (const auto& e : errors) out += (out.empty() ? "" : "; ") + e;
  return out;
}

}  // namespace

std::string to_string(const IobTag& tag) {
  switch (tag.prefix) {
    case IobPrefix::Outside:
      return "O";
    case IobPrefix::Begin:
      return "B-" + std::string(to_string(tag.label));
    case IobPrefix::Inside:
      return "I-" + std::string(to_string(tag.label));
  }
  return "O";
}

std::optional<IobTag> parse_iob_tag(std::string_view text) {
  if (text == "O") return IobTag{};
  if (text.size() < 3 || text[1] != '-') return std::nullopt;
  IobPrefix prefix;
  if (text[0] == 'B')
    prefix = IobPrefix::Begin;
  else if (text[0] == 'I')
    prefix = IobPrefix::Inside;
  else
    return std::nullopt;
  const std::string_view name = text.substr(2);
  const auto label = parse_label(name);
  // Only the long clause-level names appear in tags.
  if (!label || !is_clause_level(*label) || to_string(*label) != name) return std::nullopt;
  return IobTag{prefix, *label};
}

std::vector<std::string> check_iob(const IobSequence& sequence) {
  std::vector<std::string> errors;
  if (sequence.tokens.size() != sequence.tags.size()) {
    errors.push_back("token count " + std::to_string(sequence.tokens.size()) +
                     " differs from tag count " + std::to_string(sequence.tags.size()));
    return errors;
  }
  for (std::size_t i = 0; i < sequence.tags.size(); ++i) {
    const IobTag& tag = sequence.tags[i];
    if (tag.prefix != IobPrefix::Inside) continue;
    const bool continues = i > 0 && sequence.tags[i - 1].prefix != IobPrefix::Outside &&
                           sequence.tags[i - 1].label == tag.label;
    if (!continues)
      errors.push_back("token " + std::to_string(i) + " (" + sequence.tokens[i].text + "): " +
                       to_string(tag) + " does not continue a " +
                       std::string(to_string(tag.label)) + " span");
  }
  return errors;
}

IobSequence to_iob(const AnnotatedSentence& sentence) {
  IobSequence seq;
  seq.tokens = tokenize(sentence.text);
  seq.tags.assign(seq.tokens.size(), IobTag{});

  for (const ClauseSpan& span : sentence.spans) {
    std::vector<std::size_t> covered;
    for (std::size_t i = 0; i < seq.tokens.size(); ++i) {
      const Token& token = seq.tokens[i];
      if (token.end <= span.start || token.start >= span.end) continue;
      if (token.start < span.start || token.end > span.end)
        throw ValidationError("token \"" + token.text + "\" [" + std::to_string(token.start) + "," +
                              std::to_string(token.end) + ") straddles the boundary of span [" +
                              std::to_string(span.start) + "," + std::to_string(span.end) +
                              ") in sentence " + std::to_string(sentence.id));
      covered.push_back(i);
    }
    // Punctuation at the trailing edge of a span stays outside it.
    while (!covered.empty() && seq.tokens[covered.back()].kind == TokenKind::Punctuation)
      covered.pop_back();
    for (std::size_t k = 0; k < covered.size(); ++k)
      seq.tags[covered[k]] = {k == 0 ? IobPrefix::Begin : IobPrefix::Inside, span.label};
  }
  return seq;
}

AnnotatedSentence from_iob(const IobSequence& sequence, std::string_view text, std::int64_t id,
                           std::optional<Label> sentence_label) {
  if (const auto errors = check_iob(sequence); !errors.empty())
    throw ValidationError("illegal IOB sequence: " + join_errors(errors));

  AnnotatedSentence sentence;
  sentence.id = id;
  sentence.text = std::string(text);
  std::optional<ClauseSpan> open;
  for (std::size_t i = 0; i < sequence.tags.size(); ++i) {
    const IobTag& tag = sequence.tags[i];
    const Token& token = sequence.tokens[i];
    if (tag.prefix == IobPrefix::Inside) {
      open->end = token.end;
      continue;
    }
    if (open) sentence.spans.push_back(*open);
    open.reset();
    if (tag.prefix == IobPrefix::Begin) open = ClauseSpan{token.start, token.end, tag.label};
  }
  if (open) sentence.spans.push_back(*open);
  if (sentence.spans.empty()) sentence.sentence_label = sentence_label.value_or(Label::NoCondition);

  if (const auto violations = validate_sentence(sentence); !violations.empty())
    throw ValidationError("IOB sequence yields an invalid sentence: " + violations.front().message);
  return sentence;
}

void write_iob(std::ostream& out, const AnnotatedSentence& sentence, const IobWriteOptions& options) {
  const IobSequence seq = to_iob(sentence);
  if (options.metadata) {
    if (sentence.text.find_first_of("\r\n") != std::string::npos)
      throw ValidationError("sentence " + std::to_string(sentence.id) +
                            " contains a line break and cannot be written as IOB");
    out << "# id = " << sentence.id << '\n';
    out << "# text = " << sentence.text << '\n';
    if (sentence.sentence_label) out << "# label = " << to_string(*sentence.sentence_label) << '\n';
  }
  for (std::size_t i = 0; i < seq.tokens.size(); ++i)
    out << seq.tokens[i].text << '\t' << to_string(seq.tags[i]) << '\n';
  out << '\n';
}

std::optional<AnnotatedSentence> IobReader::next() {
  while (true) {
    try {
      return parse_block();
    } catch (const Error& e) {
      if (mode_ == ParseMode::Strict) throw;
      const auto* parse_error = dynamic_cast<const ParseError*>(&e);
      issues_.push_back({parse_error ? parse_error->line() : line_, e.what()});
    }
  }
}

std::optional<AnnotatedSentence> IobReader::parse_block() {
  struct Row {
    std::size_t line;
    std::string token;
    IobTag tag;
  };
  std::optional<std::int64_t> id;
  std::optional<std::string> text;
  std::optional<Label> label;
  std::vector<Row> rows;
  bool started = false;
  // The whole block is consumed before any error is raised, so lenient mode
  // resumes at the next sentence.
  std::optional<ParseError> error;
  auto fail = [&](const std::string& message, std::size_t line) {
    if (!error) error.emplace(message, line);
  };

  std::string raw;
  while (std::getline(in_, raw)) {
    ++line_;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const std::string_view line = trim(raw);
    if (line.empty()) {
      if (started) break;
      continue;
    }
    started = true;
    // Metadata precedes the token rows; "#<TAB>tag" is a '#' token.
    if (line.front() == '#' && rows.empty() && !(line.size() > 1 && line[1] == '\t')) {
      const std::string_view body = trim(line.substr(1));
      const auto eq = body.find('=');
      if (eq == std::string_view::npos) continue;
      const std::string_view key = trim(body.substr(0, eq));
      // Keep the text verbatim after "= ", including inner spacing.
      std::string_view value = body.substr(eq + 1);
      if (!value.empty() && value.front() == ' ') value.remove_prefix(1);
      if (key == "id") {
        try {
          id = std::stoll(std::string(value));
        } catch (const std::exception&) {
          fail("invalid sentence id \"" + std::string(value) + "\"", line_);
        }
      } else if (key == "text") {
        std::string_view kept = raw;
        kept = kept.substr(kept.find('=') + 1);
        if (!kept.empty() && kept.front() == ' ') kept.remove_prefix(1);
        text = std::string(kept);
      } else if (key == "label") {
        label = parse_label(trim(value));
        if (!label || !is_sentence_level(*label))
          fail("invalid sentence label \"" + std::string(value) + "\"", line_);
      }
      continue;
    }
    const auto split = line.find_last_of(" \t");
    if (split == std::string_view::npos) {
      fail("expected \"token<TAB>tag\"", line_);
      continue;
    }
    const std::string_view token = trim(line.substr(0, split));
    const std::string_view tag_text = line.substr(split + 1);
    const auto tag = parse_iob_tag(tag_text);
    if (!tag) {
      fail("unknown tag \"" + std::string(tag_text) + "\"", line_);
      continue;
    }
    if (tag->prefix == IobPrefix::Inside &&
        (rows.empty() || rows.back().tag.prefix == IobPrefix::Outside || rows.back().tag.label != tag->label))
      fail("illegal transition to " + std::string(tag_text) + " after " +
               (rows.empty() ? std::string("sentence start") : to_string(rows.back().tag)),
           line_);
    rows.push_back({line_, std::string(token), *tag});
  }
  if (error) throw *error;
  if (!started) return std::nullopt;
  if (rows.empty()) throw ParseError("sentence block has no tokens", line_);

  IobSequence seq;
  seq.tags.reserve(rows.size());
  for (const Row& row : rows) seq.tags.push_back(row.tag);

  if (!text) {
    std::string joined;
    for (const Row& row : rows) joined += (joined.empty() ? "" : " ") + row.token;
    text = std::move(joined);
  }
  const std::u32string decoded = utf8::decode(*text);
  std::size_t pos = 0;
  for (const Row& row : rows) {
    while (pos < decoded.size() && is_space_char(decoded[pos])) ++pos;
    const std::u32string token = utf8::decode(row.token);
    if (decoded.compare(pos, token.size(), token) != 0)
      throw ParseError("token \"" + row.token + "\" does not match the sentence text at offset " +
                           std::to_string(pos),
                       row.line);
    seq.tokens.push_back({row.token, pos, pos + token.size(), classify_token(row.token)});
    pos += token.size();
  }
  while (pos < decoded.size() && is_space_char(decoded[pos])) ++pos;
  if (pos != decoded.size())
    throw ParseError("sentence text continues past the last token", rows.back().line);

  const std::int64_t sentence_id = id.value_or(next_id_);
  next_id_ = sentence_id + 1;
  try {
    return from_iob(seq, *text, sentence_id, label);
  } catch (const ValidationError& e) {
    throw ParseError(e.what(), rows.front().line);
  }
}

}  // namespace condsplit
