// tokenize.hpp - Whitespace tokenization with punctuation split off word edges.

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace cx {

struct TokenSpan {
  std::string text;        // UTF-8
  std::size_t start = 0;   // code-point offsets into the tokenized text
  std::size_t end = 0;
  friend bool operator==(const TokenSpan&, const TokenSpan&) = default;
};

/// Splits on whitespace; trailing punctuation (. , ; : ! ? … and closing
/// quotes/brackets) and leading opening punctuation each become their own
/// single-character token. The text between consecutive tokens is empty or
/// whitespace, so tokens plus separators rebuild the input.
std::vector<TokenSpan> tokenize(std::u32string_view text, std::string_view lang = {});
std::vector<TokenSpan> tokenize(std::string_view utf8_text, std::string_view lang = {});

std::vector<std::string> token_texts(const std::vector<TokenSpan>& tokens);

}  // namespace cx
