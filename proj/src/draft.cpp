#include "cx/draft.hpp"

#include <algorithm>
#include <set>

#include "cx/doc_json.hpp"

namespace cx {

using nlohmann::json;

std::string_view origin_kind_name(Origin::Kind kind) {
  switch (kind) {
    case Origin::Kind::mt: return "mt";
    case Origin::Kind::source: return "source";
    case Origin::Kind::scratch: return "scratch";
  }
  return "scratch";
}

const TranslationUnit* Draft::find_unit(std::string_view block_id) const {
  for (const auto& u : units) {
    if (u.source_block_id == block_id) return &u;
  }
  return nullptr;
}

bool valid_draft_id(std::string_view id) {
  return !id.empty() && id.size() <= 128 && std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '-' || c == '_';
  });
}

void validate_draft(const Draft& d) {
  if (!valid_draft_id(d.id)) throw InvalidDraftError("invalid draft id '" + d.id + "'");
  if (d.source_lang.empty() || d.target_lang.empty()) {
    throw InvalidDraftError("draft languages must be set");
  }
  std::set<std::string> seen;
  for (const auto& u : d.units) {
    if (!seen.insert(u.source_block_id).second) {
      throw InvalidDraftError("duplicate unit for block " + u.source_block_id);
    }
    bool is_mt = u.origin.kind == Origin::Kind::mt;
    if (is_mt != u.mt_baseline.has_value()) {
      throw InvalidDraftError("unit " + u.source_block_id +
                              ": MT baseline must be present exactly for MT-origin units");
    }
    if (is_mt && u.origin.provider.empty()) {
      throw InvalidDraftError("unit " + u.source_block_id + ": MT origin without provider");
    }
    if (auto v = span_violation(u.current)) {
      throw InvalidDraftError("unit " + u.source_block_id + ": " + *v);
    }
    if (u.mt_baseline) {
      if (auto v = span_violation(*u.mt_baseline)) {
        throw InvalidDraftError("unit " + u.source_block_id + " baseline: " + *v);
      }
    }
  }
}

void validate_units_against(const Draft& d, const std::vector<std::string>& source_block_ids) {
  for (const auto& u : d.units) {
    if (std::find(source_block_ids.begin(), source_block_ids.end(), u.source_block_id) ==
        source_block_ids.end()) {
      throw InvalidDraftError("unit references unknown source block " + u.source_block_id);
    }
  }
}

json draft_to_json(const Draft& d) {
  json units = json::array();
  for (const auto& u : d.units) {
    json ju{{"sourceBlockId", u.source_block_id},
            {"origin", origin_kind_name(u.origin.kind)},
            {"current", rich_text_to_json(u.current)},
            {"updatedAt", format_timestamp(u.updated_at)}};
    if (u.origin.kind == Origin::Kind::mt) ju["provider"] = u.origin.provider;
    ju["mtBaseline"] = u.mt_baseline ? rich_text_to_json(*u.mt_baseline) : json(nullptr);
    units.push_back(std::move(ju));
  }
  return json{{"schemaVersion", kDraftSchemaVersion},
              {"id", d.id},
              {"sourceLang", d.source_lang},
              {"targetLang", d.target_lang},
              {"sourceTitle", d.source_title},
              {"targetTitle", d.target_title},
              {"units", std::move(units)},
              {"categories", d.categories},
              {"revision", d.revision},
              {"createdAt", format_timestamp(d.created_at)},
              {"updatedAt", format_timestamp(d.updated_at)}};
}

namespace {

const json& need(const json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) throw InvalidDraftError(std::string("missing field '") + name + "'");
  return *it;
}

std::string need_string(const json& j, const char* name) {
  const auto& v = need(j, name);
  if (!v.is_string()) throw InvalidDraftError(std::string("field '") + name + "' must be a string");
  return v.get<std::string>();
}

Timestamp need_time(const json& j, const char* name) {
  auto t = parse_timestamp(need_string(j, name));
  if (!t) throw InvalidDraftError(std::string("field '") + name + "' is not a timestamp");
  return *t;
}

RichText need_rich(const json& j, const char* name) {
  try {
    return rich_text_from_json(need(j, name));
  } catch (const JsonSchemaError& e) {
    throw InvalidDraftError(std::string(name) + ": " + e.what());
  }
}

}  // namespace

Draft draft_from_json(const json& j) {
  if (!j.is_object()) throw InvalidDraftError("draft must be a JSON object");
  const auto& version = need(j, "schemaVersion");
  if (!version.is_number_integer() || version.get<int>() != kDraftSchemaVersion) {
    throw InvalidDraftError("unsupported schemaVersion");
  }
  Draft d;
  d.id = need_string(j, "id");
  d.source_lang = need_string(j, "sourceLang");
  d.target_lang = need_string(j, "targetLang");
  d.source_title = need_string(j, "sourceTitle");
  d.target_title = need_string(j, "targetTitle");
  const auto& rev = need(j, "revision");
  if (!rev.is_number_integer() || rev.get<long long>() < 0) {
    throw InvalidDraftError("field 'revision' must be a non-negative integer");
  }
  d.revision = rev.get<long long>();
  d.created_at = need_time(j, "createdAt");
  d.updated_at = need_time(j, "updatedAt");
  const auto& cats = need(j, "categories");
  if (!cats.is_array()) throw InvalidDraftError("field 'categories' must be an array");
  for (const auto& c : cats) {
    if (!c.is_string()) throw InvalidDraftError("categories must be strings");
    d.categories.push_back(c.get<std::string>());
  }
  const auto& units = need(j, "units");
  if (!units.is_array()) throw InvalidDraftError("field 'units' must be an array");
  for (const auto& ju : units) {
    if (!ju.is_object()) throw InvalidDraftError("unit must be an object");
    TranslationUnit u;
    u.source_block_id = need_string(ju, "sourceBlockId");
    auto origin = need_string(ju, "origin");
    if (origin == "mt") {
      u.origin = Origin::mt(need_string(ju, "provider"));
    } else if (origin == "source") {
      u.origin = Origin::source();
    } else if (origin == "scratch") {
      u.origin = Origin::scratch();
    } else {
      throw InvalidDraftError("unknown origin '" + origin + "'");
    }
    u.current = need_rich(ju, "current");
    if (auto it = ju.find("mtBaseline"); it != ju.end() && !it->is_null()) {
      u.mt_baseline = need_rich(ju, "mtBaseline");
    }
    u.updated_at = need_time(ju, "updatedAt");
    d.units.push_back(std::move(u));
  }
  validate_draft(d);
  return d;
}

}  // namespace cx
