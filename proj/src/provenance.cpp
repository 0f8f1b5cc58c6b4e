#include "cx/provenance.hpp"

#include <algorithm>
#include <stdexcept>

#include "cx/tokenize.hpp"

namespace cx {

std::size_t token_edit_distance(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

namespace {

std::vector<std::string> tokens_of(const RichText& rt) { return token_texts(tokenize(std::u32string_view(rt.text))); }

double ratio_of(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::size_t longest = std::max(a.size(), b.size());
  if (longest == 0) return 1.0;
  return 1.0 - static_cast<double>(token_edit_distance(a, b)) / static_cast<double>(longest);
}

}  // namespace

double unmodified_ratio(const RichText& baseline, const RichText& current) {
  return ratio_of(tokens_of(baseline), tokens_of(current));
}

void ProvenanceConfig::validate() const {
  if (!(unit_threshold >= 0.0 && unit_threshold <= 1.0)) {
    throw std::invalid_argument("unit threshold must be in [0, 1]");
  }
  if (!(overall_threshold >= 0.0 && overall_threshold <= 1.0)) {
    throw std::invalid_argument("overall threshold must be in [0, 1]");
  }
  if (min_unit_tokens < 0) throw std::invalid_argument("minimum unit tokens must be >= 0");
}

const UnitRatio* ProvenanceReport::find(std::string_view unit_id) const {
  for (const auto& u : per_unit) {
    if (u.unit_id == unit_id) return &u;
  }
  return nullptr;
}

bool ProvenanceReport::has_overall_warning() const {
  return std::any_of(warnings.begin(), warnings.end(), [](const auto& w) { return !w.unit_id; });
}

ProvenanceReport evaluate_draft(const Draft& draft, const ProvenanceConfig& cfg) {
  cfg.validate();
  ProvenanceReport report;
  double weighted = 0;
  std::size_t weight = 0;
  for (const auto& u : draft.units) {
    if (u.origin.kind != Origin::Kind::mt || !u.mt_baseline) continue;
    auto base = tokens_of(*u.mt_baseline);
    double ratio = ratio_of(base, tokens_of(u.current));
    report.per_unit.push_back({u.source_block_id, ratio, base.size()});
    weighted += ratio * static_cast<double>(base.size());
    weight += base.size();
    if (ratio >= cfg.unit_threshold && static_cast<long long>(base.size()) >= cfg.min_unit_tokens) {
      report.warnings.push_back({u.source_block_id, ratio, cfg.unit_threshold});
    }
  }
  if (weight > 0) {
    report.overall = weighted / static_cast<double>(weight);
    if (report.overall >= cfg.overall_threshold) {
      report.warnings.push_back({std::nullopt, report.overall, cfg.overall_threshold});
    }
  }
  return report;
}

nlohmann::json provenance_report_to_json(const ProvenanceReport& report) {
  using nlohmann::json;
  json units = json::object();
  for (const auto& u : report.per_unit) units[u.unit_id] = u.ratio;
  json warnings = json::array();
  for (const auto& w : report.warnings) {
    warnings.push_back({{"scope", w.unit_id ? "unit" : "overall"},
                        {"unitId", w.unit_id ? json(*w.unit_id) : json(nullptr)},
                        {"ratio", w.ratio},
                        {"threshold", w.threshold}});
  }
  return json{{"perUnit", std::move(units)}, {"overall", report.overall}, {"warnings", std::move(warnings)}};
}

}  // namespace cx
