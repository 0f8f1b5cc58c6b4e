// adaptation.hpp - Interlanguage link and category adaptation.
//
// An EntityMap holds concept ids ("Q64") with one title per language, plus
// an inverted index from (language, normalized title) to the id. Title
// normalization treats '_' as ' ' and folds the case of the first
// character only, as wiki titles do.

#pragma once

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "cx/doc_model.hpp"

namespace cx {

class EntityMapError : public Error {
 public:
  EntityMapError(const std::string& what, std::size_t line);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Lookup key for a title: underscores as spaces, first character uppercased.
std::string title_key(std::string_view title);

class EntityMap {
 public:
  /// Records are "entity TAB lang TAB title", one per line; blank lines and
  /// lines starting with '#' are skipped. Throws EntityMapError with the
  /// 1-based line number on malformed input or a (lang, title) collision.
  static EntityMap parse(std::istream& in);
  static EntityMap load(const std::string& path);

  /// Adds one sitelink. Throws EntityMapError(line 0) on collision.
  void add(const std::string& entity, const std::string& lang, const std::string& title);

  std::optional<std::string> resolve(std::string_view lang, std::string_view title) const;
  /// Title of `entity` in `lang`, if it has one.
  std::optional<std::string> title_in(std::string_view entity, std::string_view lang) const;

  std::size_t entity_count() const { return entries_.size(); }
  std::size_t sitelink_count() const { return index_.size(); }
  const std::map<std::string, std::string, std::less<>>* sitelinks(std::string_view entity) const;

 private:
  std::optional<std::string> try_add(const std::string& entity, const std::string& lang,
                                     const std::string& title);

  std::map<std::string, std::map<std::string, std::string, std::less<>>, std::less<>> entries_;
  std::map<std::pair<std::string, std::string>, std::string, std::less<>> index_;
};

struct Adapted {
  std::string title;
  friend bool operator==(const Adapted&, const Adapted&) = default;
};
struct MissingInTarget {
  std::string entity;
  friend bool operator==(const MissingInTarget&, const MissingInTarget&) = default;
};
struct UnknownTitle {
  friend bool operator==(const UnknownTitle&, const UnknownTitle&) = default;
};

using LinkAdaptation = std::variant<Adapted, MissingInTarget, UnknownTitle>;

LinkAdaptation adapt_link(const EntityMap& map, std::string_view title, std::string_view src,
                          std::string_view tgt);

struct LinkReport {
  std::size_t adapted = 0;
  std::size_t missing = 0;
  std::size_t unknown = 0;
  std::size_t preflagged = 0;  // already marked missing, left untouched

  std::size_t total() const { return adapted + missing + unknown + preflagged; }
  LinkReport& operator+=(const LinkReport& o);
  friend bool operator==(const LinkReport&, const LinkReport&) = default;
};

/// Rewrites every Link span of `rt` from `src` to `tgt`. Links that cannot
/// be adapted keep their source title and get missing=true.
LinkReport adapt_links(RichText& rt, const EntityMap& map, std::string_view src,
                       std::string_view tgt);

/// Adapts all links of a document; the result is in language `tgt`.
std::pair<AnnotatedDoc, LinkReport> adapt_links_in_doc(const AnnotatedDoc& doc,
                                                       const EntityMap& map, std::string_view tgt);

struct CategoryAdaptation {
  std::vector<std::string> adapted;
  std::vector<std::string> dropped;
};

CategoryAdaptation adapt_categories(const std::vector<std::string>& categories,
                                    const EntityMap& map, std::string_view src,
                                    std::string_view tgt);

}  // namespace cx
