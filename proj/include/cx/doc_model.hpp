// doc_model.hpp - Offset-addressed rich text model for annotated HTML.
//
// A document is a list of translation blocks (paragraphs, headings, list
// items). Each block holds its plain text plus a list of spans that attach
// annotations (links, strong, emphasis, opaque markup) to code-point ranges
// of that text. Spans are either disjoint or properly nested and kept in
// canonical order: start ascending, end descending, document order for
// identical ranges (outermost first).
//
// Accepted markup:
//   block    p, h1..h6, li (inside optional ul/ol), html/body/section wrappers
//   inline   a href="./Title", b/strong, i/em
//   meta     link rel="category" href="./Category:Name"
// Any other element is kept as Opaque: inline elements become Opaque spans
// (payload = verbatim start tag), top-level elements become opaque blocks
// (payload = verbatim outer markup).

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cx/text.hpp"

namespace cx {

struct Link {
  std::string target;  // normalized title, spaces not underscores
  bool missing = false;
  friend bool operator==(const Link&, const Link&) = default;
};

struct Strong {
  friend bool operator==(const Strong&, const Strong&) = default;
};

struct Emphasis {
  friend bool operator==(const Emphasis&, const Emphasis&) = default;
};

struct Opaque {
  std::string payload;  // carried verbatim, never rewritten
  std::string key;      // element name, or "#comment"
  friend bool operator==(const Opaque&, const Opaque&) = default;
};

using Annotation = std::variant<Link, Strong, Emphasis, Opaque>;

/// Short lowercase name of the annotation kind ("link", "strong", ...).
std::string_view annotation_kind(const Annotation& a);

struct Span {
  std::size_t start = 0;  // inclusive, code points
  std::size_t end = 0;    // exclusive
  Annotation annotation;

  std::size_t length() const { return end - start; }
  bool contains(const Span& other) const { return start <= other.start && other.end <= end; }
  friend bool operator==(const Span&, const Span&) = default;
};

struct RichText {
  std::u32string text;
  std::vector<Span> spans;

  friend bool operator==(const RichText&, const RichText&) = default;
};

enum class BlockKind { paragraph, heading, list_item, opaque };

std::string_view block_kind_name(BlockKind kind);
std::optional<BlockKind> block_kind_from_name(std::string_view name);

struct Block {
  std::string id;
  BlockKind kind = BlockKind::paragraph;
  int level = 0;         // heading level 1..6, 0 otherwise
  bool ordered = false;  // list items only: inside <ol>
  RichText content;

  friend bool operator==(const Block&, const Block&) = default;
};

struct AnnotatedDoc {
  std::string lang;
  std::string title;
  std::vector<Block> blocks;
  std::vector<std::string> categories;

  const Block* find_block(std::string_view id) const;
  friend bool operator==(const AnnotatedDoc&, const AnnotatedDoc&) = default;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t byte_offset);
  std::size_t byte_offset() const { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

/// Block id for the block at a 0-based document position ("cxb<N>").
std::string block_id(std::size_t index);

AnnotatedDoc parse_document(std::string_view html, std::string lang, std::string title);

std::string serialize_document(const AnnotatedDoc& doc);
std::string serialize_block(const Block& block);
/// Inline markup of a rich text (what goes between a block's tags).
std::string serialize_inline(const RichText& rt);

std::string plain_text(const RichText& rt);

/// All annotations whose span covers `offset`, outermost first.
/// Throws std::out_of_range unless offset < text length.
std::vector<Annotation> annotations_at(const RichText& rt, std::size_t offset);

/// Stable sort into canonical span order.
void sort_spans(std::vector<Span>& spans);

/// Describes the first span invariant violation, or nullopt when the rich
/// text is valid (bounds, disjoint-or-nested, canonical order).
std::optional<std::string> span_violation(const RichText& rt);
inline bool is_valid(const RichText& rt) { return !span_violation(rt).has_value(); }

/// Title normalization used for link targets: underscores become spaces.
std::string normalize_title(std::string_view title);
/// "./Title" href for a normalized title.
std::string title_to_href(std::string_view title);

}  // namespace cx
