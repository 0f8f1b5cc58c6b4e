#include "support.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <unistd.h>

#include "cx/doc_json.hpp"
#include "cx/text.hpp"

namespace cxtest {

namespace fs = std::filesystem;

fs::path fixture_path(std::string_view relative) { return fs::path(CX_FIXTURE_DIR) / relative; }

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, std::string_view contents) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << contents;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

TempDir::TempDir() {
  static std::atomic<int> counter{0};
  path_ = fs::temp_directory_path() /
          ("cx-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
  fs::remove_all(path_);
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

std::vector<CorpusDoc> corpus_documents() {
  std::vector<CorpusDoc> out;
  for (const auto& lang_dir : fs::directory_iterator(fixture_path("corpus"))) {
    if (!lang_dir.is_directory()) continue;
    for (const auto& f : fs::directory_iterator(lang_dir.path())) {
      if (f.path().extension() != ".html") continue;
      std::string title = f.path().stem().string();
      std::replace(title.begin(), title.end(), '_', ' ');
      out.push_back({lang_dir.path().filename().string(), title, f.path()});
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.path < b.path; });
  return out;
}

// ---- generators -------------------------------------------------------

namespace {

template <class T>
const T& pick(Rng& rng, const std::vector<T>& v) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
bool chance(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

const std::vector<std::string> kRichWords = {
    "alpha", "Beta", "gamma", "x<y", "a&b", "\"quoted\"", "it's", "𝄞", "😀", "naïve", "Ωmega",
    "3.14", "end.", "Berlín", "ñandú", "δ>ε", "tab\tchar", "semi;colon", "東京", "«cita»", "—"};

const std::vector<std::string> kLinkTitles = {
    "Berlín", "Río Spree", "AC/DC", "100% Natural", "C++", "What?", "Hash#tag", "Under_score",
    "Muro de Berlín", "Ñu", "Tom & Jerry", "\"Quoted\" title", "Zoë"};

struct InlineKind {
  std::string payload;
  std::string key;
};

const std::vector<InlineKind> kOpaqueContainers = {
    {"<span class=\"nowrap\">", "span"},
    {"<sup class=\"reference\" id=\"cite_ref-1\">", "sup"},
    {"<a href=\"#cite_note-1\">", "a"},
    {"<code>", "code"},
    {"<small title=\"a &amp; b\">", "small"}};

const std::vector<InlineKind> kOpaqueVoids = {{"<br/>", "br"},
                                              {"<br>", "br"},
                                              {"<!-- note -->", "#comment"},
                                              {"<img src=\"x.png\" alt=\"x\"/>", "img"},
                                              {"<wbr>", "wbr"}};

struct Builder {
  std::u32string text;
  std::vector<cx::Span> spans;
};

void emit_words(Rng& rng, Builder& b) {
  int n = uniform(rng, 1, 4);
  for (int i = 0; i < n; ++i) {
    if (!b.text.empty() && chance(rng, 0.8)) b.text.push_back(U' ');
    b.text += cx::utf8::decode(pick(rng, kRichWords));
  }
}

void gen_inline(Rng& rng, Builder& b, int depth, int max_depth, bool in_link) {
  int n = uniform(rng, 1, 4);
  for (int i = 0; i < n; ++i) {
    int r = uniform(rng, 0, 9);
    if (depth >= max_depth || r < 4) {
      emit_words(rng, b);
    } else if (r == 9) {
      const auto& v = pick(rng, kOpaqueVoids);
      b.spans.push_back({b.text.size(), b.text.size(), cx::Opaque{v.payload, v.key}});
    } else {
      cx::Annotation ann;
      bool link = false;
      switch (r) {
        case 4: ann = cx::Strong{}; break;
        case 5: ann = cx::Emphasis{}; break;
        case 6:
        case 7:
          if (!in_link) {
            ann = cx::Link{pick(rng, kLinkTitles), chance(rng, 0.2)};
            link = true;
          } else {
            ann = cx::Strong{};
          }
          break;
        default: {
          const auto& c = pick(rng, kOpaqueContainers);
          ann = cx::Opaque{c.payload, c.key};
          link = c.key == "a";
        }
      }
      if (!b.text.empty() && chance(rng, 0.7)) b.text.push_back(U' ');
      std::size_t idx = b.spans.size();
      b.spans.push_back({b.text.size(), b.text.size(), ann});
      gen_inline(rng, b, depth + 1, max_depth, in_link || link);
      b.spans[idx].end = b.text.size();
    }
  }
}

const std::vector<std::string> kOpaqueBlocks = {
    "<table><tr><td>a &amp; b</td></tr></table>",
    "<!-- comment -->",
    "<figure><img src=\"a.png\"/><figcaption>Cap</figcaption></figure>",
    "<div class=\"thumb\">x <b>y</b></div>",
    "<hr/>",
    "<blockquote>Quote 𝄞</blockquote>"};

const std::vector<std::string> kCategories = {"Categoría:Capitales", "Category:Cities in Germany",
                                              "Categoria:Rius d'Europa", "Cat:A_B", "Cat:100%"};

}  // namespace

cx::RichText random_rich_text(Rng& rng, int max_depth) {
  Builder b;
  gen_inline(rng, b, 0, max_depth, false);
  cx::RichText rt{std::move(b.text), std::move(b.spans)};
  cx::sort_spans(rt.spans);
  return rt;
}

cx::AnnotatedDoc random_document(Rng& rng, int max_depth) {
  cx::AnnotatedDoc doc;
  doc.lang = "es";
  doc.title = "Generated";
  int blocks = uniform(rng, 0, 8);
  for (int i = 0; i < blocks; ++i) {
    cx::Block b;
    int r = uniform(rng, 0, 19);
    if (r < 10) {
      b.kind = cx::BlockKind::paragraph;
    } else if (r < 13) {
      b.kind = cx::BlockKind::heading;
      b.level = uniform(rng, 1, 6);
    } else if (r < 17) {
      b.kind = cx::BlockKind::list_item;
      b.ordered = chance(rng, 0.4);
    } else {
      auto parsed = cx::parse_document(pick(rng, kOpaqueBlocks), doc.lang, doc.title);
      b = parsed.blocks.at(0);
    }
    if (b.kind != cx::BlockKind::opaque) b.content = random_rich_text(rng, uniform(rng, 0, max_depth));
    b.id = cx::block_id(doc.blocks.size());
    doc.blocks.push_back(std::move(b));
  }
  std::vector<std::string> cats = kCategories;
  std::shuffle(cats.begin(), cats.end(), rng);
  cats.resize(static_cast<std::size_t>(uniform(rng, 0, 3)));
  for (auto& c : cats) c = cx::normalize_title(c);
  doc.categories = cats;
  return doc;
}

namespace {

const std::vector<std::string> kIdentityWords = {
    "the", "cat", "sat", "on", "mat", "The", "a", "dog", "ran", "big", "red", "house", "de",
    "la", "el", "ciudad", "Berlín", "𝄞", "naïve", "cat", "the", "Dog", "über", "3,5"};

struct TokenPos {
  std::size_t start;
  std::size_t end;
};

void add_token_spans(Rng& rng, const std::vector<TokenPos>& tokens, std::size_t lo, std::size_t hi,
                     int depth, std::vector<cx::Span>& spans) {
  if (depth > 3) return;
  std::size_t i = lo;
  while (i < hi) {
    if (chance(rng, depth == 1 ? 0.25 : 0.3)) {
      std::size_t max_len = std::min<std::size_t>(depth == 1 ? 6 : 3, hi - i);
      std::size_t len = static_cast<std::size_t>(uniform(rng, 1, static_cast<int>(max_len)));
      cx::Annotation ann;
      switch (uniform(rng, 0, 3)) {
        case 0: ann = cx::Strong{}; break;
        case 1: ann = cx::Emphasis{}; break;
        case 2: ann = cx::Link{pick(rng, kLinkTitles), chance(rng, 0.2)}; break;
        default: ann = cx::Opaque{"<span class=\"k\">", "span"};
      }
      spans.push_back({tokens[i].start, tokens[i + len - 1].end, ann});
      add_token_spans(rng, tokens, i, i + len, depth + 1, spans);
      i += len;
    } else {
      ++i;
    }
  }
}

}  // namespace

cx::RichText random_identity_input(Rng& rng) {
  std::u32string text;
  std::vector<TokenPos> tokens;
  static const std::vector<std::u32string> kSeparators = {U" ", U" ", U" ", U" ", U"  ", U"\n", U" \n "};
  if (chance(rng, 0.1)) text = U"\n ";
  int sentences = uniform(rng, 1, 4);
  for (int s = 0; s < sentences; ++s) {
    int words = uniform(rng, 1, 8);
    for (int w = 0; w < words; ++w) {
      if (!tokens.empty()) text += pick(rng, kSeparators);
      auto word = cx::utf8::decode(pick(rng, kIdentityWords));
      if (word.size() > 1 && chance(rng, 0.1)) {
        // Split inside the word so span edges land mid-token.
        std::size_t cut = static_cast<std::size_t>(uniform(rng, 1, static_cast<int>(word.size()) - 1));
        tokens.push_back({text.size(), text.size() + cut});
        tokens.push_back({text.size() + cut, text.size() + word.size()});
      } else {
        tokens.push_back({text.size(), text.size() + word.size()});
      }
      text += word;
      if (chance(rng, 0.1)) {
        // Glued reference mark, as in "país.[1]".
        auto mark = cx::utf8::decode("[" + std::to_string(uniform(rng, 1, 9)) + "]");
        tokens.push_back({text.size(), text.size() + mark.size()});
        text += mark;
      }
      if (w + 1 < words && chance(rng, 0.15)) {
        tokens.push_back({text.size(), text.size() + 1});
        text.push_back(U',');
      }
    }
    static const char32_t kTerminators[] = {U'.', U'!', U'?'};
    tokens.push_back({text.size(), text.size() + 1});
    text.push_back(kTerminators[uniform(rng, 0, 2)]);
  }
  if (chance(rng, 0.1)) text += U" \n";
  std::vector<cx::Span> spans;
  add_token_spans(rng, tokens, 0, tokens.size(), 1, spans);
  for (std::size_t i = 0; i <= tokens.size(); ++i) {
    if (!chance(rng, 0.06)) continue;
    std::size_t at = i < tokens.size() ? tokens[i].start : text.size();
    if (i < tokens.size() && i > 0 && chance(rng, 0.5)) at = tokens[i - 1].end;
    spans.push_back({at, at, cx::Opaque{"<br/>", "br"}});
  }
  cx::RichText rt{std::move(text), std::move(spans)};
  cx::sort_spans(rt.spans);
  return rt;
}

ReverseCase random_reverse_case(Rng& rng) {
  static const std::vector<std::string> pool = {
      "alpha", "bravo", "charlie", "delta", "echo", "foxtrot", "golf", "hotel", "india",
      "juliett", "kilo", "lima", "mike", "november", "oscar", "papa", "quebec", "romeo",
      "sierra", "tango", "uniform", "victor", "whiskey", "xray", "yankee", "zulu", "ciudad",
      "río", "puente", "torre", "castillo", "museo", "plaza", "calle", "barrio", "parque"};
  ReverseCase c;
  std::vector<std::string> words = pool;
  std::shuffle(words.begin(), words.end(), rng);
  words.resize(static_cast<std::size_t>(uniform(rng, 1, 14)));
  c.words = words;
  c.first = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(words.size()) - 1));
  c.last = static_cast<std::size_t>(uniform(rng, static_cast<int>(c.first) + 1, static_cast<int>(words.size())));
  std::u32string text;
  std::size_t start = 0, end = 0;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) text.push_back(U' ');
    if (i == c.first) start = text.size();
    text += cx::utf8::decode(words[i]);
    if (i + 1 == c.last) end = text.size();
  }
  cx::Annotation ann;
  switch (uniform(rng, 0, 3)) {
    case 0: ann = cx::Strong{}; break;
    case 1: ann = cx::Emphasis{}; break;
    case 2: ann = cx::Link{"Berlín", false}; break;
    default: ann = cx::Opaque{"<span class=\"k\">", "span"};
  }
  c.input = cx::RichText{std::move(text), {cx::Span{start, end, ann}}};
  return c;
}

cx::RichText words_text(std::size_t tokens, std::string_view prefix) {
  std::string s;
  for (std::size_t i = 0; i < tokens; ++i) {
    if (i) s += ' ';
    s += prefix;
    s += std::to_string(i);
  }
  return cx::RichText{cx::utf8::decode(s), {}};
}

cx::Draft make_draft(const std::string& id, const std::string& src, const std::string& tgt,
                     const std::string& source_title) {
  cx::Draft d;
  d.id = id;
  d.source_lang = src;
  d.target_lang = tgt;
  d.source_title = source_title;
  d.target_title = source_title;
  return d;
}

HermeticService::HermeticService(bool seed_event_log) {
  nlohmann::json cfg = {
      {"corpusDir", fixture_path("corpus").string()},
      {"entityMap", fixture_path("entities.tsv").string()},
      {"draftDir", "drafts"},
      {"publishedDir", "published"},
      {"eventLog", "log/events.ndjson"},
      {"providers",
       {{{"name", "identity"}, {"kind", "identity"},
         {"pairs", nlohmann::json::array({{"es", "ca"}, {"es", "pt"}, {"en", "es"}})}},
        {{"name", "dict"}, {"kind", "dictionary"}, {"pairs", nlohmann::json::array({{"es", "ca"}})},
         {"lexicon", fixture_path("lexicon/es-ca.tsv").string()}}}}};
  if (seed_event_log) {
    std::filesystem::create_directories(dir_ / "log");
    std::filesystem::copy_file(fixture_path("events.ndjson"), dir_ / "log" / "events.ndjson");
  }
  config_ = cx::service_config_from_json(cfg, dir_.path());
  service_ = std::make_unique<cx::CxService>(cx::build_service_parts(config_));
}

nlohmann::json put_body(const std::string& source_title, long long expected_revision,
                        const std::vector<std::pair<std::string, cx::RichText>>& units,
                        const std::string& src, const std::string& tgt) {
  nlohmann::json ju = nlohmann::json::array();
  for (const auto& [block, text] : units) {
    ju.push_back({{"sourceBlockId", block},
                  {"origin", "mt"},
                  {"provider", "identity"},
                  {"mtBaseline", cx::rich_text_to_json(text)},
                  {"current", cx::rich_text_to_json(text)}});
  }
  return {{"expectedRevision", expected_revision},
          {"draft",
           {{"sourceLang", src},
            {"targetLang", tgt},
            {"sourceTitle", source_title},
            {"targetTitle", source_title},
            {"units", ju}}}};
}

// ---- oracles ----------------------------------------------------------

namespace {

void append_code_point(std::string& out, unsigned long cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

}  // namespace

std::string strip_tags(std::string_view html) {
  static const std::map<std::string, unsigned long> named = {
      {"amp", '&'},      {"lt", '<'},       {"gt", '>'},       {"quot", '"'},
      {"apos", '\''},    {"nbsp", 0xA0},    {"mdash", 0x2014}, {"ndash", 0x2013},
      {"hellip", 0x2026}, {"laquo", 0xAB},  {"raquo", 0xBB},   {"copy", 0xA9}};
  std::string out;
  std::size_t i = 0;
  while (i < html.size()) {
    if (html.compare(i, 4, "<!--") == 0) {
      auto close = html.find("-->", i + 4);
      i = close == std::string_view::npos ? html.size() : close + 3;
    } else if (html[i] == '<') {
      char quote = 0;
      ++i;
      while (i < html.size()) {
        char c = html[i++];
        if (quote) {
          if (c == quote) quote = 0;
        } else if (c == '"' || c == '\'') {
          quote = c;
        } else if (c == '>') {
          break;
        }
      }
    } else if (html[i] == '&') {
      auto semi = html.find(';', i);
      bool done = false;
      if (semi != std::string_view::npos && semi - i <= 12) {
        std::string name(html.substr(i + 1, semi - i - 1));
        if (!name.empty() && name[0] == '#') {
          try {
            unsigned long cp = (name.size() > 1 && (name[1] == 'x' || name[1] == 'X'))
                                   ? std::stoul(name.substr(2), nullptr, 16)
                                   : std::stoul(name.substr(1), nullptr, 10);
            append_code_point(out, cp);
            done = true;
          } catch (const std::exception&) {
          }
        } else if (auto it = named.find(name); it != named.end()) {
          append_code_point(out, it->second);
          done = true;
        }
      }
      if (done) {
        i = semi + 1;
      } else {
        out += '&';
        ++i;
      }
    } else {
      out += html[i++];
    }
  }
  return out;
}

namespace {

std::string ascii_lower(std::string s) {
  for (char& c : s) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return s;
}

std::size_t plain_levenshtein(const std::u32string& a, const std::u32string& b) {
  std::vector<std::vector<std::size_t>> d(a.size() + 1, std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + (a[i - 1] != b[j - 1])});
    }
  }
  return d[a.size()][b.size()];
}

double weighted_distance(const std::vector<std::string>& window, const std::vector<std::string>& needle) {
  std::vector<std::vector<double>> memo(needle.size() + 1,
                                        std::vector<double>(window.size() + 1, -1.0));
  std::function<double(std::size_t, std::size_t)> d = [&](std::size_t i, std::size_t j) -> double {
    if (i == 0) return static_cast<double>(j);
    if (j == 0) return static_cast<double>(i);
    double& m = memo[i][j];
    if (m >= 0) return m;
    m = std::min({d(i - 1, j) + 1.0, d(i, j - 1) + 1.0,
                  d(i - 1, j - 1) + oracle_substitution_cost(needle[i - 1], window[j - 1])});
    return m;
  };
  return d(needle.size(), window.size());
}

}  // namespace

double oracle_substitution_cost(const std::string& a, const std::string& b) {
  auto fa = cx::utf8::decode(ascii_lower(a));
  auto fb = cx::utf8::decode(ascii_lower(b));
  if (fa == fb) return 0.0;
  return static_cast<double>(plain_levenshtein(fa, fb)) /
         static_cast<double>(std::max(fa.size(), fb.size()));
}

std::optional<OracleMatch> brute_force_locate(const std::vector<std::string>& haystack,
                                              const std::vector<std::string>& needle,
                                              double threshold) {
  const std::size_t n = needle.size();
  const std::size_t lo = n > 2 ? n - 2 : 1;
  const std::size_t hi = n + 2;
  std::vector<OracleMatch> all;
  for (std::size_t begin = 0; begin < haystack.size(); ++begin) {
    for (std::size_t len = lo; len <= hi && begin + len <= haystack.size(); ++len) {
      std::vector<std::string> window(haystack.begin() + static_cast<std::ptrdiff_t>(begin),
                                      haystack.begin() + static_cast<std::ptrdiff_t>(begin + len));
      double cost = weighted_distance(window, needle) / static_cast<double>(std::max(len, n));
      all.push_back({begin, begin + len, cost});
    }
  }
  if (all.empty()) return std::nullopt;
  double best = all.front().cost;
  for (const auto& m : all) best = std::min(best, m.cost);
  std::optional<OracleMatch> chosen;
  for (const auto& m : all) {
    if (m.cost > best + 1e-12) continue;
    if (!chosen || m.begin < chosen->begin ||
        (m.begin == chosen->begin && m.end < chosen->end)) {
      chosen = m;
    }
  }
  if (chosen->cost > threshold) return std::nullopt;
  return chosen;
}

namespace {

std::size_t naive_rec(const std::vector<std::string>& a, std::size_t i, const std::vector<std::string>& b,
                      std::size_t j) {
  if (i == 0) return j;
  if (j == 0) return i;
  return std::min({naive_rec(a, i - 1, b, j) + 1, naive_rec(a, i, b, j - 1) + 1,
                   naive_rec(a, i - 1, b, j - 1) + (a[i - 1] == b[j - 1] ? 0 : 1)});
}

}  // namespace

std::size_t naive_edit_distance(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  return naive_rec(a, a.size(), b, b.size());
}

std::size_t memo_edit_distance(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::vector<long>> memo(a.size() + 1, std::vector<long>(b.size() + 1, -1));
  std::function<std::size_t(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t j) -> std::size_t {
    if (i == 0) return j;
    if (j == 0) return i;
    long& m = memo[i][j];
    if (m >= 0) return static_cast<std::size_t>(m);
    m = static_cast<long>(std::min({rec(i - 1, j) + 1, rec(i, j - 1) + 1,
                                    rec(i - 1, j - 1) + (a[i - 1] == b[j - 1] ? 0 : 1)}));
    return static_cast<std::size_t>(m);
  };
  return rec(a.size(), b.size());
}

std::vector<SitelinkRow> read_sitelink_rows(const fs::path& path) {
  std::vector<SitelinkRow> rows;
  std::istringstream in(read_file(path));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto t1 = line.find('\t');
    auto t2 = line.find('\t', t1 + 1);
    rows.push_back({line.substr(0, t1), line.substr(t1 + 1, t2 - t1 - 1), line.substr(t2 + 1)});
  }
  return rows;
}

namespace {

std::string oracle_key(std::string t) {
  std::replace(t.begin(), t.end(), '_', ' ');
  if (!t.empty() && t[0] >= 'a' && t[0] <= 'z') t[0] = static_cast<char>(t[0] - 'a' + 'A');
  return t;
}

}  // namespace

cx::LinkAdaptation oracle_adapt_link(const std::vector<SitelinkRow>& rows, const std::string& title,
                                     const std::string& src, const std::string& tgt) {
  std::optional<std::string> entity;
  for (const auto& r : rows) {
    if (r.lang == src && oracle_key(r.title) == oracle_key(title)) entity = r.entity;
  }
  if (!entity) return cx::UnknownTitle{};
  for (const auto& r : rows) {
    if (r.entity == *entity && r.lang == tgt) return cx::Adapted{r.title};
  }
  return cx::MissingInTarget{*entity};
}

std::map<std::pair<std::string, std::string>, std::size_t> oracle_pair_counts(
    const std::vector<cx::Event>& events) {
  std::map<std::pair<std::string, std::string>, std::size_t> counts;
  for (const auto& e : events) {
    if (e.kind != cx::EventKind::published) continue;
    bool found = false;
    for (auto& [pair, n] : counts) {
      if (pair.first == e.source_lang && pair.second == e.target_lang) {
        ++n;
        found = true;
      }
    }
    if (!found) counts[{e.source_lang, e.target_lang}] = 1;
  }
  return counts;
}

}  // namespace cxtest
