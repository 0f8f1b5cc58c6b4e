// draft.hpp - In-progress translation state and its JSON file form.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cx/doc_model.hpp"
#include "cx/timestamp.hpp"

namespace cx {

inline constexpr int kDraftSchemaVersion = 1;

/// How a unit's first version was produced.
struct Origin {
  enum class Kind { mt, source, scratch };
  Kind kind = Kind::scratch;
  std::string provider;  // set iff kind == mt

  static Origin mt(std::string provider) { return Origin{Kind::mt, std::move(provider)}; }
  static Origin source() { return Origin{Kind::source, {}}; }
  static Origin scratch() { return Origin{Kind::scratch, {}}; }
  friend bool operator==(const Origin&, const Origin&) = default;
};

std::string_view origin_kind_name(Origin::Kind kind);

struct TranslationUnit {
  std::string source_block_id;
  Origin origin;
  std::optional<RichText> mt_baseline;  // present iff origin is mt; never changes
  RichText current;
  Timestamp updated_at{};

  friend bool operator==(const TranslationUnit&, const TranslationUnit&) = default;
};

struct Draft {
  std::string id;
  std::string source_lang;
  std::string target_lang;
  std::string source_title;
  std::string target_title;
  std::vector<TranslationUnit> units;
  std::vector<std::string> categories;
  long long revision = 0;
  Timestamp created_at{};
  Timestamp updated_at{};

  const TranslationUnit* find_unit(std::string_view block_id) const;
  friend bool operator==(const Draft&, const Draft&) = default;
};

class InvalidDraftError : public Error {
 public:
  using Error::Error;
};

/// Letters, digits, '-' and '_', 1 to 128 characters.
bool valid_draft_id(std::string_view id);

/// Checks id syntax, unit id uniqueness, origin/baseline consistency and
/// span discipline. Throws InvalidDraftError.
void validate_draft(const Draft& d);

/// Throws InvalidDraftError if any block id is not in `source_block_ids`.
void validate_units_against(const Draft& d, const std::vector<std::string>& source_block_ids);

nlohmann::json draft_to_json(const Draft& d);
/// Strict schema check; throws InvalidDraftError.
Draft draft_from_json(const nlohmann::json& j);

}  // namespace cx
