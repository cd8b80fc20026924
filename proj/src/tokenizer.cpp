#include "condsplit/tokenizer.hpp"

#include "condsplit/errors.hpp"
#include "condsplit/utf8.hpp"

namespace condsplit {

namespace {

bool is_space(char32_t c) {
  switch (c) {
    case U' ':
    case U'\t':
    case U'\n':
    case U'\r':
    case U'\v':
    case U'\f':
    case 0x00A0:
    case 0x1680:
    case 0x2028:
    case 0x2029:
    case 0x202F:
    case 0x205F:
    case 0x3000:
    case 0xFEFF:
      return true;
    default:
      return c >= 0x2000 && c <= 0x200B;
  }
}

bool is_ascii_alpha(char32_t c) { return (c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z'); }

bool is_digit(char32_t c) { return c >= U'0' && c <= U'9'; }

// Non-ASCII symbols and punctuation from the blocks that show up in English
// technical text. Everything else above ASCII counts as a letter.
bool is_unicode_punct(char32_t c) {
  if (c >= 0x00A1 && c <= 0x00BF)
    return c != 0x00AA && c != 0x00B2 && c != 0x00B3 && c != 0x00B5 && c != 0x00B9 &&
           c != 0x00BA && c != 0x00BC && c != 0x00BD && c != 0x00BE;
  if (c == 0x00D7 || c == 0x00F7) return true;
  if (c >= 0x2010 && c <= 0x2027) return true;
  if (c >= 0x2030 && c <= 0x205E) return true;
  if (c >= 0x2190 && c <= 0x2BFF) return true;  // arrows, math, boxes, shapes
  if (c >= 0x3001 && c <= 0x303F) return true;
  if (c >= 0xFF01 && c <= 0xFF0F) return true;
  if (c >= 0xFF1A && c <= 0xFF20) return true;
  return false;
}

bool is_alnum(char32_t c) {
  if (c < 0x80) return is_ascii_alpha(c) || is_digit(c);
  return !is_space(c) && !is_unicode_punct(c);
}

bool is_word_joiner(char32_t c) {
  return c == U'-' || c == U'\'' || c == U'_' || c == 0x2019 || c == 0x2011;
}

bool is_digit_joiner(char32_t c) { return c == U'.' || c == U','; }

}  // namespace

bool is_space_char(char32_t c) { return is_space(c); }

bool is_word_char(char32_t c) { return is_alnum(c); }

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::Word:
      return "word";
    case TokenKind::Number:
      return "number";
    case TokenKind::Punctuation:
      return "punctuation";
  }
  return "word";
}

std::vector<Token> tokenize(std::string_view sentence) {
  const std::u32string text = utf8::decode(sentence);
  std::vector<Token> tokens;
  const std::size_t n = text.size();
  std::size_t i = 0;
  while (i < n) {
    const char32_t c = text[i];
    if (is_space(c)) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (!is_alnum(c)) {
      ++i;
      tokens.push_back({utf8::encode(text.substr(start, 1)), start, i, TokenKind::Punctuation});
      continue;
    }
    bool all_digits = true;
    while (i < n) {
      const char32_t cur = text[i];
      if (is_alnum(cur)) {
        all_digits = all_digits && (is_digit(cur));
        ++i;
        continue;
      }
      const bool next_alnum = i + 1 < n && is_alnum(text[i + 1]);
      if (next_alnum && is_word_joiner(cur)) {
        all_digits = false;
        ++i;
        continue;
      }
      if (next_alnum && is_digit_joiner(cur) && is_digit(text[i - 1]) && is_digit(text[i + 1])) {
        ++i;
        continue;
      }
      break;
    }
    tokens.push_back({utf8::encode(text.substr(start, i - start)), start, i,
                      all_digits ? TokenKind::Number : TokenKind::Word});
  }
  if (tokens.empty()) throw EmptyInputError("cannot tokenize an empty or whitespace-only sentence");
  return tokens;
}

}  // namespace condsplit
