#include "cx/segmenter.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace cx {

namespace {

// Kept in sync with data/abbreviations/*.txt (checked by the unit tests).
const std::map<std::string, std::vector<std::string>, std::less<>> kBuiltin = {
    {"en", {"Mr.", "Mrs.", "Ms.", "Dr.", "Prof.", "Sr.", "Jr.", "St.", "vs.", "etc.", "e.g.",
            "i.e.", "Inc.", "Ltd.", "Co.", "No.", "Jan.", "Feb.", "Mar.", "Apr.", "Aug.", "Sept.",
            "Oct.", "Nov.", "Dec.", "approx."}},
    {"es", {"Sr.", "Sra.", "Srta.", "Dr.", "Dra.", "Ud.", "Uds.", "Av.", "etc.", "p.", "ej.",
            "núm.", "pág.", "aprox."}},
    {"ca", {"Sr.", "Sra.", "Dr.", "Dra.", "Av.", "etc.", "p.", "ex.", "núm.", "pàg.", "aprox."}},
    {"pt", {"Sr.", "Sra.", "Dr.", "Dra.", "Av.", "etc.", "p.", "ex.", "pág.", "aprox."}},
};

bool is_terminator(char32_t c) { return c == U'.' || c == U'!' || c == U'?' || c == 0x2026; }

bool is_closer(char32_t c) {
  return c == U'"' || c == U'\'' || c == U')' || c == U']' || c == 0x201D || c == 0x2019 ||
         c == 0x00BB;
}

bool is_opener(char32_t c) {
  return c == U'"' || c == U'\'' || c == U'(' || c == U'[' || c == 0x201C || c == 0x2018 ||
         c == 0x00AB || c == 0x00BF || c == 0x00A1;
}

}  // namespace

std::vector<std::string> parse_abbreviation_list(std::string_view contents) {
  std::vector<std::string> out;
  std::istringstream in{std::string(contents)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto t = utf8::encode(trim(utf8::decode(line)));
    if (t.empty() || t[0] == '#') continue;
    out.push_back(std::move(t));
  }
  return out;
}

const AbbreviationTable& AbbreviationTable::defaults() {
  static const AbbreviationTable table = [] {
    AbbreviationTable t;
    for (const auto& [lang, list] : kBuiltin) {
      for (const auto& a : list) t.add(lang, a);
    }
    return t;
  }();
  return table;
}

void AbbreviationTable::add(std::string_view lang, std::string_view abbreviation) {
  auto it = by_lang_.find(lang);
  if (it == by_lang_.end()) it = by_lang_.emplace(std::string(lang), std::set<std::u32string>{}).first;
  it->second.insert(fold_case(utf8::decode(abbreviation)));
}

void AbbreviationTable::load_file(std::string_view lang, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open abbreviation file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  for (const auto& a : parse_abbreviation_list(buf.str())) add(lang, a);
}

void AbbreviationTable::load_directory(const std::string& dir) {
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt") {
      load_file(entry.path().stem().string(), entry.path().string());
    }
  }
}

bool AbbreviationTable::contains(std::string_view lang, std::u32string_view token) const {
  auto it = by_lang_.find(lang);
  if (it == by_lang_.end()) return false;
  return it->second.contains(fold_case(token));
}

std::vector<std::string> AbbreviationTable::entries(std::string_view lang) const {
  std::vector<std::string> out;
  auto it = by_lang_.find(lang);
  if (it == by_lang_.end()) return out;
  for (const auto& a : it->second) out.push_back(utf8::encode(a));
  return out;
}

std::vector<SentenceRange> segment_sentences(const RichText& rt, std::string_view lang) {
  return segment_sentences(rt, lang, AbbreviationTable::defaults());
}

std::vector<SentenceRange> segment_sentences(const RichText& rt, std::string_view lang,
                                             const AbbreviationTable& abbreviations) {
  const std::u32string& text = rt.text;
  const std::size_t n = text.size();
  std::vector<SentenceRange> out;

  std::size_t sentence_start = 0;
  while (sentence_start < n && is_space(text[sentence_start])) ++sentence_start;
  std::size_t last = n;
  while (last > sentence_start && is_space(text[last - 1])) --last;
  if (sentence_start >= last) return out;

  auto crosses_span = [&](std::size_t cut, std::size_t next) {
    return std::any_of(rt.spans.begin(), rt.spans.end(),
                       [&](const Span& s) { return s.start < next && s.end > cut; });
  };

  std::size_t pos = sentence_start;
  while (pos < last) {
    if (!is_terminator(text[pos])) {
      ++pos;
      continue;
    }
    std::size_t term_begin = pos;
    std::size_t term_end = pos;
    while (term_end < n && is_terminator(text[term_end])) ++term_end;
    std::size_t cut = term_end;
    while (cut < n && is_closer(text[cut])) ++cut;
    if (cut >= last || !is_space(text[cut])) {
      pos = std::max(cut, pos + 1);
      continue;
    }
    std::size_t next = cut;
    while (next < n && is_space(text[next])) ++next;

    std::size_t token_begin = term_begin;
    while (token_begin > sentence_start && !is_space(text[token_begin - 1])) --token_begin;
    while (token_begin < term_begin && is_opener(text[token_begin])) ++token_begin;
    std::u32string_view token(text.data() + token_begin, term_end - token_begin);

    bool suppressed = abbreviations.contains(lang, token) ||
                      (term_begin > 0 && is_digit(text[term_begin - 1]) && is_digit(text[next])) ||
                      crosses_span(cut, next);
    if (!suppressed) {
      out.push_back(SentenceRange{sentence_start, cut});
      sentence_start = next;
    }
    pos = next;
  }
  out.push_back(SentenceRange{sentence_start, last});
  return out;
}

Correspondence sentence_correspondence(std::span<const SentenceRange> source,
                                       std::span<const SentenceRange> target) {
  Correspondence c;
  std::size_t common = std::min(source.size(), target.size());
  for (std::size_t i = 0; i < common; ++i) c.pairs.emplace_back(i, i);
  for (std::size_t i = common; i < source.size(); ++i) c.unpaired_source.push_back(i);
  for (std::size_t i = common; i < target.size(); ++i) c.unpaired_target.push_back(i);
  return c;
}

}  // namespace cx
