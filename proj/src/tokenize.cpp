#include "cx/tokenize.hpp"

#include "cx/text.hpp"

namespace cx {

namespace {

bool is_trailing_punct(char32_t c) {
  switch (c) {
    case U'.': case U',': case U';': case U':': case U'!': case U'?': case 0x2026:
    case U')': case U']': case U'}': case U'"': case U'\'': case 0x00BB: case 0x201D:
    case 0x2019:
      return true;
    default:
      return false;
  }
}

bool is_leading_punct(char32_t c) {
  switch (c) {
    case U'(': case U'[': case U'{': case U'"': case U'\'': case 0x00AB: case 0x201C:
    case 0x2018: case 0x00BF: case 0x00A1:
      return true;
    default:
      return false;
  }
}

void push(std::vector<TokenSpan>& out, std::u32string_view text, std::size_t b, std::size_t e) {
  out.push_back(TokenSpan{utf8::encode(text.substr(b, e - b)), b, e});
}

}  // namespace

std::vector<TokenSpan> tokenize(std::u32string_view text, std::string_view) {
  std::vector<TokenSpan> out;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    while (i < n && is_space(text[i])) ++i;
    if (i >= n) break;
    std::size_t word_end = i;
    while (word_end < n && !is_space(text[word_end])) ++word_end;

    std::size_t b = i;
    std::size_t e = word_end;
    std::vector<TokenSpan> tail;
    while (b < e && is_leading_punct(text[b])) {
      push(out, text, b, b + 1);
      ++b;
    }
    while (e > b && is_trailing_punct(text[e - 1])) {
      --e;
      tail.push_back(TokenSpan{utf8::encode(text.substr(e, 1)), e, e + 1});
    }
    if (b < e) push(out, text, b, e);
    out.insert(out.end(), tail.rbegin(), tail.rend());
    i = word_end;
  }
  return out;
}

std::vector<TokenSpan> tokenize(std::string_view utf8_text, std::string_view lang) {
  return tokenize(utf8::decode(utf8_text), lang);
}

std::vector<std::string> token_texts(const std::vector<TokenSpan>& tokens) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(t.text);
  return out;
}

}  // namespace cx
