#include "cx/doc_model.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include "html_common.hpp"

namespace cx {

ParseError::ParseError(const std::string& what, std::size_t byte_offset)
    : Error(what + " at byte " + std::to_string(byte_offset)), byte_offset_(byte_offset) {}

std::string_view annotation_kind(const Annotation& a) {
  struct Visitor {
    std::string_view operator()(const Link&) const { return "link"; }
    std::string_view operator()(const Strong&) const { return "strong"; }
    std::string_view operator()(const Emphasis&) const { return "emphasis"; }
    std::string_view operator()(const Opaque&) const { return "opaque"; }
  };
  return std::visit(Visitor{}, a);
}

std::string_view block_kind_name(BlockKind kind) {
  switch (kind) {
    case BlockKind::paragraph: return "paragraph";
    case BlockKind::heading: return "heading";
    case BlockKind::list_item: return "list-item";
    case BlockKind::opaque: return "opaque";
  }
  return "paragraph";
}

std::optional<BlockKind> block_kind_from_name(std::string_view name) {
  for (auto k : {BlockKind::paragraph, BlockKind::heading, BlockKind::list_item, BlockKind::opaque}) {
    if (block_kind_name(k) == name) return k;
  }
  return std::nullopt;
}

const Block* AnnotatedDoc::find_block(std::string_view id) const {
  for (const auto& b : blocks) {
    if (b.id == id) return &b;
  }
  return nullptr;
}

std::string block_id(std::size_t index) { return "cxb" + std::to_string(index); }

std::string normalize_title(std::string_view title) {
  std::string out(title);
  std::replace(out.begin(), out.end(), '_', ' ');
  return out;
}

std::string title_to_href(std::string_view title) {
  static constexpr char hex[] = "0123456789ABCDEF";
  std::string out = "./";
  for (char ch : title) {
    auto c = static_cast<unsigned char>(ch);
    if (c == ' ') {
      out.push_back('_');
    } else if (c < 0x20 || c == '%' || c == '"' || c == '?' || c == '#' || c == '<' || c == '>' ||
               c == '_') {
      out.push_back('%');
      out.push_back(hex[c >> 4]);
      out.push_back(hex[c & 0xF]);
    } else {
      out.push_back(ch);
    }
  }
  return out;
}

void sort_spans(std::vector<Span>& spans) {
  std::stable_sort(spans.begin(), spans.end(), [](const Span& a, const Span& b) {
    if (a.start != b.start) return a.start < b.start;
    return a.end > b.end;
  });
}

std::optional<std::string> span_violation(const RichText& rt) {
  const auto& spans = rt.spans;
  for (std::size_t i = 0; i < spans.size(); ++i) {
    const auto& s = spans[i];
    if (s.start > s.end || s.end > rt.text.size()) {
      return "span " + std::to_string(i) + " [" + std::to_string(s.start) + "," +
             std::to_string(s.end) + ") out of bounds";
    }
    if (i > 0) {
      const auto& p = spans[i - 1];
      if (p.start > s.start || (p.start == s.start && p.end < s.end)) {
        return "span " + std::to_string(i) + " out of canonical order";
      }
    }
  }
  for (std::size_t i = 0; i < spans.size(); ++i) {
    for (std::size_t j = i + 1; j < spans.size(); ++j) {
      const auto& a = spans[i];
      const auto& b = spans[j];
      bool disjoint = a.end <= b.start || b.end <= a.start;
      if (!disjoint && !a.contains(b) && !b.contains(a)) {
        return "spans " + std::to_string(i) + " and " + std::to_string(j) + " partially overlap";
      }
    }
  }
  return std::nullopt;
}

std::string plain_text(const RichText& rt) { return utf8::encode(rt.text); }

std::vector<Annotation> annotations_at(const RichText& rt, std::size_t offset) {
  if (offset >= rt.text.size()) {
    throw std::out_of_range("offset " + std::to_string(offset) + " outside text of length " +
                            std::to_string(rt.text.size()));
  }
  std::vector<Annotation> out;
  for (const auto& s : rt.spans) {
    if (s.start <= offset && offset < s.end) out.push_back(s.annotation);
  }
  return out;
}

namespace {

void append_escaped(std::string& out, std::u32string_view text) {
  for (char32_t c : text) {
    switch (c) {
      case U'&': out += "&amp;"; break;
      case U'<': out += "&lt;"; break;
      case U'>': out += "&gt;"; break;
      default: utf8::append(out, c);
    }
  }
}

std::string open_tag(const Annotation& a) {
  struct Visitor {
    std::string operator()(const Link& l) const {
      std::string out = "<a href=\"" + html::escape_attribute(title_to_href(l.target)) + "\"";
      if (l.missing) out += " class=\"new\"";
      return out + ">";
    }
    std::string operator()(const Strong&) const { return "<b>"; }
    std::string operator()(const Emphasis&) const { return "<i>"; }
    std::string operator()(const Opaque& o) const { return o.payload; }
  };
  return std::visit(Visitor{}, a);
}

std::string close_tag(const Annotation& a) {
  struct Visitor {
    std::string operator()(const Link&) const { return "</a>"; }
    std::string operator()(const Strong&) const { return "</b>"; }
    std::string operator()(const Emphasis&) const { return "</i>"; }
    std::string operator()(const Opaque& o) const {
      if (html::opaque_is_void(o)) return {};
      return "</" + o.key + ">";
    }
  };
  return std::visit(Visitor{}, a);
}

std::string block_tag(const Block& b) {
  switch (b.kind) {
    case BlockKind::heading: return "h" + std::to_string(std::clamp(b.level, 1, 6));
    case BlockKind::list_item: return "li";
    default: return "p";
  }
}

}  // namespace

std::string serialize_inline(const RichText& rt) {
  std::string out;
  std::vector<const Span*> stack;
  std::size_t pos = 0;
  auto emit_to = [&](std::size_t until) {
    if (until > pos) {
      append_escaped(out, std::u32string_view(rt.text).substr(pos, until - pos));
      pos = until;
    }
  };
  for (const auto& s : rt.spans) {
    while (!stack.empty() && stack.back()->end <= s.start) {
      emit_to(stack.back()->end);
      out += close_tag(stack.back()->annotation);
      stack.pop_back();
    }
    emit_to(s.start);
    out += open_tag(s.annotation);
    stack.push_back(&s);
  }
  while (!stack.empty()) {
    emit_to(stack.back()->end);
    out += close_tag(stack.back()->annotation);
    stack.pop_back();
  }
  emit_to(rt.text.size());
  return out;
}

std::string serialize_block(const Block& b) {
  if (b.kind == BlockKind::opaque) {
    for (const auto& s : b.content.spans) {
      if (const auto* o = std::get_if<Opaque>(&s.annotation)) return o->payload;
    }
  }
  auto tag = block_tag(b);
  return "<" + tag + ">" + serialize_inline(b.content) + "</" + tag + ">";
}

std::string serialize_document(const AnnotatedDoc& doc) {
  std::vector<std::string> lines;
  std::optional<bool> open_list;  // ordered flag of the list currently open
  auto close_list = [&] {
    if (open_list) lines.push_back(*open_list ? "</ol>" : "</ul>");
    open_list.reset();
  };
  for (const auto& b : doc.blocks) {
    if (b.kind == BlockKind::list_item) {
      if (open_list && *open_list != b.ordered) close_list();
      if (!open_list) {
        lines.push_back(b.ordered ? "<ol>" : "<ul>");
        open_list = b.ordered;
      }
    } else {
      close_list();
    }
    lines.push_back(serialize_block(b));
  }
  close_list();
  for (const auto& c : doc.categories) {
    lines.push_back("<link rel=\"category\" href=\"" + html::escape_attribute(title_to_href(c)) +
                    "\"/>");
  }
  std::string out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i) out.push_back('\n');
    out += lines[i];
  }
  return out;
}

}  // namespace cx
