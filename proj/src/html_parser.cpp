#include <algorithm>
#include <array>
#include <cctype>
#include <optional>
#include <utility>

#include "cx/doc_model.hpp"
#include "html_common.hpp"

namespace cx {
namespace html {

bool is_void_element(std::string_view name) {
  static constexpr std::array<std::string_view, 14> kVoid = {
      "area", "base", "br", "col", "embed", "hr", "img", "input", "link", "meta", "param",
      "source", "track", "wbr"};
  return std::find(kVoid.begin(), kVoid.end(), name) != kVoid.end();
}

bool opaque_is_void(const Opaque& o) {
  if (!o.key.empty() && o.key[0] == '#') return true;
  if (is_void_element(o.key)) return true;
  return o.payload.size() >= 2 && o.payload.ends_with("/>");
}

std::string escape_attribute(std::string_view value) {
  std::string out;
  for (char c : value) {
    if (c == '&') {
      out += "&amp;";
    } else if (c == '"') {
      out += "&quot;";
    } else {
      out.push_back(c);
    }
  }
  return out;
}

namespace {

struct NamedEntity {
  std::string_view name;
  char32_t cp;
};

constexpr std::array<NamedEntity, 14> kEntities = {{
    {"amp", U'&'}, {"lt", U'<'}, {"gt", U'>'}, {"quot", U'"'}, {"apos", U'\''},
    {"nbsp", 0x00A0}, {"ndash", 0x2013}, {"mdash", 0x2014}, {"hellip", 0x2026},
    {"laquo", 0x00AB}, {"raquo", 0x00BB}, {"copy", 0x00A9}, {"shy", 0x00AD}, {"middot", 0x00B7},
}};

std::optional<char32_t> lookup_reference(std::string_view ref) {
  if (ref.empty()) return std::nullopt;
  if (ref[0] == '#') {
    int base = 10;
    std::size_t i = 1;
    if (ref.size() > 1 && (ref[1] == 'x' || ref[1] == 'X')) base = 16, i = 2;
    if (i >= ref.size()) return std::nullopt;
    char32_t v = 0;
    for (; i < ref.size(); ++i) {
      int d = -1;
      char c = ref[i];
      if (c >= '0' && c <= '9') d = c - '0';
      else if (base == 16 && c >= 'a' && c <= 'f') d = c - 'a' + 10;
      else if (base == 16 && c >= 'A' && c <= 'F') d = c - 'A' + 10;
      if (d < 0) return std::nullopt;
      v = v * base + d;
      if (v > 0x10FFFF) return std::nullopt;
    }
    if (v == 0 || (v >= 0xD800 && v <= 0xDFFF)) return std::nullopt;
    return v;
  }
  for (const auto& e : kEntities) {
    if (e.name == ref) return e.cp;
  }
  return std::nullopt;
}

}  // namespace

std::u32string decode_entities(std::string_view raw) {
  std::u32string out;
  std::size_t i = 0;
  while (i < raw.size()) {
    auto amp = raw.find('&', i);
    auto chunk = raw.substr(i, amp == std::string_view::npos ? std::string_view::npos : amp - i);
    out += utf8::decode(chunk);
    if (amp == std::string_view::npos) break;
    auto semi = raw.find(';', amp);
    if (semi != std::string_view::npos && semi - amp <= 10) {
      if (auto cp = lookup_reference(raw.substr(amp + 1, semi - amp - 1))) {
        out.push_back(*cp);
        i = semi + 1;
        continue;
      }
    }
    out.push_back(U'&');
    i = amp + 1;
  }
  return out;
}

std::string decode_href_title(std::string_view tail) {
  std::string spaced = normalize_title(tail);
  std::string out;
  auto hexval = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  for (std::size_t i = 0; i < spaced.size(); ++i) {
    if (spaced[i] == '%' && i + 2 < spaced.size()) {
      int hi = hexval(spaced[i + 1]);
      int lo = hexval(spaced[i + 2]);
      if (hi >= 0 && lo >= 0) {
        out.push_back(static_cast<char>(hi * 16 + lo));
        i += 2;
        continue;
      }
    }
    out.push_back(spaced[i]);
  }
  return out;
}

}  // namespace html

namespace {

enum class TokenType { text, start_tag, end_tag, comment, declaration };

struct Token {
  TokenType type;
  std::size_t begin = 0;  // byte offsets into the source
  std::size_t end = 0;
  std::string name = {};  // lowercase tag name
  std::vector<std::pair<std::string, std::string>> attrs = {};
  bool self_closing = false;

  const std::string* attr(std::string_view key) const {
    for (const auto& [k, v] : attrs) {
      if (k == key) return &v;
    }
    return nullptr;
  }
};

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == ':' || c == '_';
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (pos_ < src_.size()) {
      if (src_[pos_] == '<') {
        out.push_back(markup());
      } else {
        auto next = src_.find('<', pos_);
        if (next == std::string_view::npos) next = src_.size();
        out.push_back(Token{TokenType::text, pos_, next});
        pos_ = next;
      }
    }
    return out;
  }

 private:
  Token markup() {
    std::size_t begin = pos_;
    if (src_.substr(pos_, 4) == "<!--") {
      auto close = src_.find("-->", pos_ + 4);
      if (close == std::string_view::npos) throw ParseError("unterminated comment", begin);
      pos_ = close + 3;
      return Token{TokenType::comment, begin, pos_};
    }
    if (src_.substr(pos_, 2) == "<!" || src_.substr(pos_, 2) == "<?") {
      auto close = src_.find('>', pos_);
      if (close == std::string_view::npos) throw ParseError("unterminated declaration", begin);
      pos_ = close + 1;
      return Token{TokenType::declaration, begin, pos_};
    }
    bool is_end = src_.substr(pos_, 2) == "</";
    pos_ += is_end ? 2 : 1;
    std::size_t name_begin = pos_;
    while (pos_ < src_.size() && is_name_char(src_[pos_])) ++pos_;
    if (pos_ == name_begin) throw ParseError("invalid '<' in markup", begin);
    Token tok{is_end ? TokenType::end_tag : TokenType::start_tag, begin, 0};
    tok.name = lower(src_.substr(name_begin, pos_ - name_begin));
    while (true) {
      skip_space();
      if (pos_ >= src_.size()) throw ParseError("unterminated tag <" + tok.name + ">", begin);
      char c = src_[pos_];
      if (c == '>') {
        ++pos_;
        break;
      }
      if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
        if (is_end) throw ParseError("malformed end tag", begin);
        tok.self_closing = true;
        pos_ += 2;
        break;
      }
      if (is_end) throw ParseError("attributes on end tag </" + tok.name + ">", begin);
      std::size_t attr_begin = pos_;
      while (pos_ < src_.size() && !std::isspace(static_cast<unsigned char>(src_[pos_])) &&
             src_[pos_] != '=' && src_[pos_] != '>' && src_[pos_] != '/') {
        ++pos_;
      }
      if (pos_ == attr_begin) throw ParseError("malformed attribute", pos_);
      std::string key = lower(src_.substr(attr_begin, pos_ - attr_begin));
      std::string value;
      skip_space();
      if (pos_ < src_.size() && src_[pos_] == '=') {
        ++pos_;
        skip_space();
        if (pos_ >= src_.size()) throw ParseError("unterminated tag <" + tok.name + ">", begin);
        char q = src_[pos_];
        std::string_view raw;
        if (q == '"' || q == '\'') {
          auto close = src_.find(q, pos_ + 1);
          if (close == std::string_view::npos) throw ParseError("unterminated attribute value", pos_);
          raw = src_.substr(pos_ + 1, close - pos_ - 1);
          pos_ = close + 1;
        } else {
          std::size_t vb = pos_;
          while (pos_ < src_.size() && !std::isspace(static_cast<unsigned char>(src_[pos_])) &&
                 src_[pos_] != '>') {
            ++pos_;
          }
          raw = src_.substr(vb, pos_ - vb);
        }
        value = utf8::encode(html::decode_entities(raw));
      }
      tok.attrs.emplace_back(std::move(key), std::move(value));
    }
    tok.end = pos_;
    return tok;
  }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

bool is_heading(std::string_view name) {
  return name.size() == 2 && name[0] == 'h' && name[1] >= '1' && name[1] <= '6';
}

bool is_block_tag(std::string_view name) { return name == "p" || name == "li" || is_heading(name); }

bool is_container(std::string_view name) {
  return name == "html" || name == "body" || name == "section" || name == "ul" || name == "ol";
}

bool is_category_link(const Token& t) {
  if (t.name != "link") return false;
  const auto* rel = t.attr("rel");
  const auto* href = t.attr("href");
  if (!rel || !href) return false;
  return lower(*rel).find("category") != std::string::npos;
}

std::string href_title(std::string_view href) {
  if (href.starts_with("./")) href.remove_prefix(2);
  return html::decode_href_title(href);
}

class TreeBuilder {
 public:
  TreeBuilder(std::string_view src, std::vector<Token> tokens)
      : src_(src), tokens_(std::move(tokens)) {}

  void build(AnnotatedDoc& doc) {
    doc_ = &doc;
    std::vector<const Token*> containers;
    while (i_ < tokens_.size()) {
      const Token& t = tokens_[i_];
      switch (t.type) {
        case TokenType::text: {
          auto txt = html::decode_entities(src_.substr(t.begin, t.end - t.begin));
          for (char32_t c : txt) {
            if (!is_space(c)) throw ParseError("text outside of a block", t.begin);
          }
          ++i_;
          break;
        }
        case TokenType::declaration:
          ++i_;
          break;
        case TokenType::comment:
          add_opaque_block(t, t, U"", "#comment");
          ++i_;
          break;
        case TokenType::end_tag:
          if (containers.empty() || containers.back()->name != t.name) {
            throw ParseError("unexpected end tag </" + t.name + ">", t.begin);
          }
          containers.pop_back();
          ++i_;
          break;
        case TokenType::start_tag:
          if (is_category_link(t)) {
            add_category(t);
            ++i_;
          } else if (is_container(t.name)) {
            if (!t.self_closing) containers.push_back(&t);
            ++i_;
          } else if (is_block_tag(t.name) && !t.self_closing) {
            bool ordered = false;
            for (auto it = containers.rbegin(); it != containers.rend(); ++it) {
              if ((*it)->name == "ol" || (*it)->name == "ul") {
                ordered = (*it)->name == "ol";
                break;
              }
            }
            parse_block(t, ordered);
          } else {
            capture_opaque_block();
          }
          break;
      }
    }
    if (!containers.empty()) {
      throw ParseError("unclosed <" + containers.back()->name + ">", containers.back()->begin);
    }
  }

 private:
  void add_category(const Token& t) {
    auto title = href_title(*t.attr("href"));
    auto& cats = doc_->categories;
    if (std::find(cats.begin(), cats.end(), title) == cats.end()) cats.push_back(std::move(title));
  }

  void add_opaque_block(const Token& open, const Token& close, std::u32string text,
                        std::string key) {
    Block b;
    b.id = block_id(doc_->blocks.size());
    b.kind = BlockKind::opaque;
    std::size_t n = text.size();
    b.content.text = std::move(text);
    b.content.spans.push_back(
        Span{0, n, Opaque{std::string(src_.substr(open.begin, close.end - open.begin)), std::move(key)}});
    doc_->blocks.push_back(std::move(b));
  }

  // Consumes an unknown top-level element with its whole subtree.
  void capture_opaque_block() {
    const Token& open = tokens_[i_];
    std::u32string text;
    if (open.self_closing || html::is_void_element(open.name)) {
      add_opaque_block(open, open, U"", open.name);
      ++i_;
      return;
    }
    std::vector<const Token*> stack{&open};
    ++i_;
    while (i_ < tokens_.size()) {
      const Token& t = tokens_[i_++];
      if (t.type == TokenType::text) {
        text += html::decode_entities(src_.substr(t.begin, t.end - t.begin));
      } else if (t.type == TokenType::start_tag) {
        if (!t.self_closing && !html::is_void_element(t.name)) stack.push_back(&t);
      } else if (t.type == TokenType::end_tag) {
        if (stack.back()->name != t.name) {
          throw ParseError("mismatched end tag </" + t.name + ">, expected </" +
                               stack.back()->name + ">",
                           t.begin);
        }
        stack.pop_back();
        if (stack.empty()) {
          add_opaque_block(open, t, std::move(text), open.name);
          return;
        }
      }
    }
    throw ParseError("unclosed <" + stack.back()->name + ">", stack.back()->begin);
  }

  struct OpenElement {
    const Token* tag;
    std::optional<std::size_t> span;  // index into rt.spans
  };

  void parse_block(const Token& open, bool ordered) {
    Block b;
    b.id = block_id(doc_->blocks.size());
    if (is_heading(open.name)) {
      b.kind = BlockKind::heading;
      b.level = open.name[1] - '0';
    } else if (open.name == "li") {
      b.kind = BlockKind::list_item;
      b.ordered = ordered;
    }
    RichText& rt = b.content;
    std::vector<OpenElement> stack;
    ++i_;
    while (true) {
      if (i_ >= tokens_.size()) {
        const Token* last = stack.empty() ? &open : stack.back().tag;
        throw ParseError("unclosed <" + last->name + ">", last->begin);
      }
      const Token& t = tokens_[i_++];
      if (t.type == TokenType::text) {
        rt.text += html::decode_entities(src_.substr(t.begin, t.end - t.begin));
      } else if (t.type == TokenType::comment || t.type == TokenType::declaration) {
        rt.spans.push_back(Span{rt.text.size(), rt.text.size(),
                                Opaque{std::string(src_.substr(t.begin, t.end - t.begin)),
                                       t.type == TokenType::comment ? "#comment" : "#decl"}});
      } else if (t.type == TokenType::end_tag) {
        if (stack.empty()) {
          if (t.name != open.name) {
            throw ParseError("mismatched end tag </" + t.name + ">, expected </" + open.name + ">",
                             t.begin);
          }
          break;
        }
        if (stack.back().tag->name != t.name) {
          throw ParseError("mismatched end tag </" + t.name + ">, expected </" +
                               stack.back().tag->name + ">",
                           t.begin);
        }
        if (stack.back().span) rt.spans[*stack.back().span].end = rt.text.size();
        stack.pop_back();
      } else if (is_category_link(t)) {
        add_category(t);
      } else {
        auto annotation = inline_annotation(t);
        std::size_t here = rt.text.size();
        rt.spans.push_back(Span{here, here, std::move(annotation)});
        bool is_void = t.self_closing || html::is_void_element(t.name);
        if (!is_void) stack.push_back(OpenElement{&t, rt.spans.size() - 1});
      }
    }
    sort_spans(rt.spans);
    doc_->blocks.push_back(std::move(b));
  }

  Annotation inline_annotation(const Token& t) {
    auto raw = std::string(src_.substr(t.begin, t.end - t.begin));
    if (t.self_closing) return Opaque{raw, t.name};
    if (t.name == "b" || t.name == "strong") return Strong{};
    if (t.name == "i" || t.name == "em") return Emphasis{};
    if (t.name == "a") {
      const auto* href = t.attr("href");
      if (href && href->starts_with("./")) {
        Link link{href_title(*href), false};
        if (const auto* cls = t.attr("class")) {
          auto c = " " + *cls + " ";
          link.missing = c.find(" new ") != std::string::npos;
        }
        return link;
      }
    }
    return Opaque{raw, t.name};
  }

  std::string_view src_;
  std::vector<Token> tokens_;
  std::size_t i_ = 0;
  AnnotatedDoc* doc_ = nullptr;
};

}  // namespace

AnnotatedDoc parse_document(std::string_view html, std::string lang, std::string title) {
  try {
    (void)utf8::decode(html);
  } catch (const Utf8Error& e) {
    throw ParseError(std::string("invalid UTF-8: ") + e.what(), e.byte_offset());
  }
  AnnotatedDoc doc;
  doc.lang = std::move(lang);
  doc.title = std::move(title);
  TreeBuilder builder(html, Lexer(html).run());
  builder.build(doc);
  return doc;
}

}  // namespace cx
