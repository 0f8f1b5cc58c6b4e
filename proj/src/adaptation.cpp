#include "cx/adaptation.hpp"

#include <algorithm>
#include <fstream>

namespace cx {

EntityMapError::EntityMapError(const std::string& what, std::size_t line)
    : Error(line ? "entity map line " + std::to_string(line) + ": " + what : "entity map: " + what),
      line_(line) {}

std::string title_key(std::string_view title) {
  return utf8::encode(upper_first(utf8::decode(normalize_title(title))));
}

namespace {

bool valid_entity_id(std::string_view id) {
  return id.size() >= 2 && id[0] == 'Q' &&
         std::all_of(id.begin() + 1, id.end(), [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

std::optional<std::string> EntityMap::try_add(const std::string& entity, const std::string& lang,
                                              const std::string& title) {
  auto key = std::make_pair(lang, title_key(title));
  auto hit = index_.find(key);
  if (hit != index_.end()) {
    if (hit->second == entity) return std::nullopt;  // repeated record
    return "(" + lang + ", " + title + ") maps to both " + hit->second + " and " + entity;
  }
  auto& links = entries_[entity];
  if (auto existing = links.find(lang); existing != links.end()) {
    return entity + " already has a " + lang + " title '" + existing->second + "'";
  }
  links.emplace(lang, normalize_title(title));
  index_.emplace(std::move(key), entity);
  return std::nullopt;
}

void EntityMap::add(const std::string& entity, const std::string& lang, const std::string& title) {
  if (auto err = try_add(entity, lang, title)) throw EntityMapError(*err, 0);
}

EntityMap EntityMap::parse(std::istream& in) {
  EntityMap map;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::size_t pos = 0;
    while (true) {
      auto tab = line.find('\t', pos);
      fields.push_back(line.substr(pos, tab == std::string::npos ? std::string::npos : tab - pos));
      if (tab == std::string::npos) break;
      pos = tab + 1;
    }
    if (fields.size() != 3) {
      throw EntityMapError("expected 3 tab-separated fields, got " + std::to_string(fields.size()),
                           lineno);
    }
    if (!valid_entity_id(fields[0])) throw EntityMapError("bad entity id '" + fields[0] + "'", lineno);
    if (fields[1].empty()) throw EntityMapError("empty language", lineno);
    if (fields[2].empty()) throw EntityMapError("empty title", lineno);
    try {
      (void)utf8::decode(fields[2]);
    } catch (const Utf8Error& e) {
      throw EntityMapError(e.what(), lineno);
    }
    if (auto err = map.try_add(fields[0], fields[1], fields[2])) throw EntityMapError(*err, lineno);
  }
  return map;
}

EntityMap EntityMap::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open entity map " + path);
  return parse(in);
}

std::optional<std::string> EntityMap::resolve(std::string_view lang, std::string_view title) const {
  auto it = index_.find(std::make_pair(std::string(lang), title_key(title)));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::string> EntityMap::title_in(std::string_view entity,
                                               std::string_view lang) const {
  auto e = entries_.find(entity);
  if (e == entries_.end()) return std::nullopt;
  auto t = e->second.find(lang);
  if (t == e->second.end()) return std::nullopt;
  return t->second;
}

const std::map<std::string, std::string, std::less<>>* EntityMap::sitelinks(
    std::string_view entity) const {
  auto e = entries_.find(entity);
  return e == entries_.end() ? nullptr : &e->second;
}

LinkAdaptation adapt_link(const EntityMap& map, std::string_view title, std::string_view src,
                          std::string_view tgt) {
  auto entity = map.resolve(src, title);
  if (!entity) return UnknownTitle{};
  auto target = map.title_in(*entity, tgt);
  if (!target) return MissingInTarget{*entity};
  return Adapted{*target};
}

LinkReport& LinkReport::operator+=(const LinkReport& o) {
  adapted += o.adapted;
  missing += o.missing;
  unknown += o.unknown;
  preflagged += o.preflagged;
  return *this;
}

LinkReport adapt_links(RichText& rt, const EntityMap& map, std::string_view src,
                       std::string_view tgt) {
  LinkReport report;
  for (auto& span : rt.spans) {
    auto* link = std::get_if<Link>(&span.annotation);
    if (!link) continue;
    if (link->missing) {
      ++report.preflagged;
      continue;
    }
    auto verdict = adapt_link(map, link->target, src, tgt);
    if (auto* a = std::get_if<Adapted>(&verdict)) {
      link->target = a->title;
      ++report.adapted;
    } else {
      link->missing = true;
      if (std::holds_alternative<MissingInTarget>(verdict)) ++report.missing;
      else ++report.unknown;
    }
  }
  return report;
}

std::pair<AnnotatedDoc, LinkReport> adapt_links_in_doc(const AnnotatedDoc& doc,
                                                       const EntityMap& map, std::string_view tgt) {
  AnnotatedDoc out = doc;
  out.lang = std::string(tgt);
  LinkReport report;
  for (auto& block : out.blocks) report += adapt_links(block.content, map, doc.lang, tgt);
  return {std::move(out), report};
}

CategoryAdaptation adapt_categories(const std::vector<std::string>& categories,
                                    const EntityMap& map, std::string_view src,
                                    std::string_view tgt) {
  CategoryAdaptation out;
  for (const auto& c : categories) {
    auto verdict = adapt_link(map, c, src, tgt);
    if (auto* a = std::get_if<Adapted>(&verdict)) {
      if (std::find(out.adapted.begin(), out.adapted.end(), a->title) == out.adapted.end()) {
        out.adapted.push_back(a->title);
      }
    } else {
      out.dropped.push_back(c);
    }
  }
  return out;
}

}  // namespace cx
