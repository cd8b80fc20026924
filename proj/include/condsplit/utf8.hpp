#pragma once

#include <cstddef>
#include <string>
#include <string_view>

// Offsets throughout the library count Unicode scalar values, not bytes.
namespace condsplit::utf8 {

// Throws ParseError on malformed input.
std::u32string decode(std::string_view text);

std::string encode(std::u32string_view text);

std::size_t length(std::string_view text);

// Substring by scalar-value offsets [start, end).
std::string slice(std::string_view text, std::size_t start, std::size_t end);

}  // namespace condsplit::utf8
