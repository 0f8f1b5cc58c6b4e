// segmenter.hpp - Rule-based sentence segmentation over block text.
//
// A boundary follows a run of terminators (. ! ? …), optionally followed by
// closing quotes/brackets, when whitespace comes next. It is suppressed when
//   - the token ending at the terminator is a known abbreviation,
//   - the terminator sits between digits ("3. 000"), or
//   - any span of the rich text crosses the boundary.
// Ranges are trimmed of surrounding whitespace and never empty.

#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cx/doc_model.hpp"

namespace cx {

struct SentenceRange {
  std::size_t start = 0;
  std::size_t end = 0;
  friend bool operator==(const SentenceRange&, const SentenceRange&) = default;
};

/// Per-language abbreviation lists. Entries are matched case-insensitively
/// against the whitespace-delimited token that ends with the terminator.
class AbbreviationTable {
 public:
  /// Built-in lists for en, es, ca, pt.
  static const AbbreviationTable& defaults();

  void add(std::string_view lang, std::string_view abbreviation);
  /// Adds every entry of an abbreviation file (one per line, '#' comments).
  void load_file(std::string_view lang, const std::string& path);
  /// Loads <dir>/<lang>.txt for every .txt file in a directory.
  void load_directory(const std::string& dir);

  bool contains(std::string_view lang, std::u32string_view token) const;
  std::vector<std::string> entries(std::string_view lang) const;

 private:
  std::map<std::string, std::set<std::u32string>, std::less<>> by_lang_;
};

/// Parses abbreviation file contents.
std::vector<std::string> parse_abbreviation_list(std::string_view contents);

std::vector<SentenceRange> segment_sentences(const RichText& rt, std::string_view lang);
std::vector<SentenceRange> segment_sentences(const RichText& rt, std::string_view lang,
                                             const AbbreviationTable& abbreviations);

struct Correspondence {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (source, target)
  std::vector<std::size_t> unpaired_source;
  std::vector<std::size_t> unpaired_target;
  friend bool operator==(const Correspondence&, const Correspondence&) = default;
};

/// Positional pairing i <-> i; the longer side's tail is reported unpaired.
Correspondence sentence_correspondence(std::span<const SentenceRange> source,
                                       std::span<const SentenceRange> target);

}  // namespace cx
