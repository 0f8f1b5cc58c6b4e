// provenance.hpp - How much machine translation survives unedited.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cx/doc_model.hpp"
#include "cx/draft.hpp"

namespace cx {

/// Case-sensitive Levenshtein distance over whole tokens.
std::size_t token_edit_distance(const std::vector<std::string>& a, const std::vector<std::string>& b);

/// 1 - d / max(|A|, |B|) over the tokens of the two plain texts; 1.0 when both are empty.
double unmodified_ratio(const RichText& baseline, const RichText& current);

struct ProvenanceConfig {
  double unit_threshold = 0.85;
  double overall_threshold = 0.75;
  long long min_unit_tokens = 10;

  /// Throws std::invalid_argument.
  void validate() const;
};

struct ProvenanceWarning {
  std::optional<std::string> unit_id;  // nullopt for the overall warning
  double ratio = 0;
  double threshold = 0;
  friend bool operator==(const ProvenanceWarning&, const ProvenanceWarning&) = default;
};

struct UnitRatio {
  std::string unit_id;
  double ratio = 0;
  std::size_t baseline_tokens = 0;
  friend bool operator==(const UnitRatio&, const UnitRatio&) = default;
};

struct ProvenanceReport {
  std::vector<UnitRatio> per_unit;  // MT-origin units, in draft order
  double overall = 0;
  std::vector<ProvenanceWarning> warnings;

  const UnitRatio* find(std::string_view unit_id) const;
  bool has_overall_warning() const;
};

/// Advisory only. Unit warnings come first in unit order, then the overall one.
ProvenanceReport evaluate_draft(const Draft& draft, const ProvenanceConfig& cfg = {});

nlohmann::json provenance_report_to_json(const ProvenanceReport& report);

}  // namespace cx
