#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace condsplit {

enum class TokenKind { Word, Number, Punctuation };

std::string_view to_string(TokenKind kind);

// A token with scalar-value offsets [start, end) into the source sentence.
struct Token {
  std::string text;
  std::size_t start = 0;
  std::size_t end = 0;
  TokenKind kind = TokenKind::Word;

  friend bool operator==(const Token&, const Token&) = default;
};

// Character classes shared by the tokenizer and span normalization.
bool is_space_char(char32_t c);
bool is_word_char(char32_t c);

// Splits on whitespace and punctuation. Letters and digits form words;
// hyphens, apostrophes and underscores join two alphanumerics ("opt-out",
// "I'll"); '.' and ',' join two digits ("1,936"). Every other non-space
// character is a one-character punctuation token.
//
// Throws EmptyInputError on whitespace-only input and ParseError on invalid
// UTF-8.
std::vector<Token> tokenize(std::string_view sentence);

}  // namespace condsplit
