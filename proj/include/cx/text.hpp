// text.hpp - UTF-8 transcoding and the small amount of Unicode case
// handling the translation pipeline needs.
//
// All offsets in the document model are code-point offsets, so most of the
// library works on std::u32string and converts at the edges.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cx {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Utf8Error : public Error {
 public:
  Utf8Error(const std::string& what, std::size_t byte_offset)
      : Error(what), byte_offset_(byte_offset) {}
  std::size_t byte_offset() const { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

namespace utf8 {

std::u32string decode(std::string_view bytes);
std::string encode(std::u32string_view text);
void append(std::string& out, char32_t cp);
std::size_t length(std::string_view bytes);

}  // namespace utf8

bool is_space(char32_t c);
bool is_digit(char32_t c);
bool is_upper(char32_t c);

// Simple one-to-one case mappings for Latin, Greek and Cyrillic.
char32_t to_lower(char32_t c);
char32_t to_upper(char32_t c);

std::u32string fold_case(std::u32string_view s);
std::string fold_case(std::string_view utf8_text);

/// Uppercases the first code point only (wiki title convention).
std::u32string upper_first(std::u32string_view s);

std::u32string trim(std::u32string_view s);

/// Levenshtein distance over code points.
std::size_t char_edit_distance(std::u32string_view a, std::u32string_view b);

}  // namespace cx
