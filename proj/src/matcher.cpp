#include "cx/matcher.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "cx/text.hpp"

namespace cx {

double token_substitution_cost(std::string_view a, std::string_view b) {
  auto fa = fold_case(utf8::decode(a));
  auto fb = fold_case(utf8::decode(b));
  if (fa == fb) return 0.0;
  auto longest = std::max(fa.size(), fb.size());
  return static_cast<double>(char_edit_distance(fa, fb)) / static_cast<double>(longest);
}

namespace {

std::optional<MatchResult> best_window(std::span<const TokenSpan> haystack,
                                       std::span<const TokenSpan> needle, double threshold,
                                       std::optional<double> hint) {
  if (needle.empty()) throw std::invalid_argument("locate_subsegment: empty needle");
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw std::invalid_argument("locate_subsegment: threshold outside [0,1]");
  }
  const std::size_t n = needle.size();
  const std::size_t h = haystack.size();
  const std::size_t min_len = n > 2 ? n - 2 : 1;
  if (h < min_len) return std::nullopt;

  std::vector<std::u32string> fn(n);
  std::vector<std::u32string> fh(h);
  for (std::size_t r = 0; r < n; ++r) fn[r] = fold_case(utf8::decode(needle[r].text));
  for (std::size_t k = 0; k < h; ++k) fh[k] = fold_case(utf8::decode(haystack[k].text));
  std::vector<double> sub(n * h);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t k = 0; k < h; ++k) {
      if (fn[r] == fh[k]) continue;
      auto longest = std::max(fn[r].size(), fh[k].size());
      sub[r * h + k] =
          static_cast<double>(char_edit_distance(fn[r], fh[k])) / static_cast<double>(longest);
    }
  }

  std::optional<MatchResult> best;
  const std::size_t max_cols = n + 3;
  std::vector<double> prev(max_cols);
  std::vector<double> cur(max_cols);

  for (std::size_t begin = 0; begin + min_len <= h; ++begin) {
    const std::size_t max_len = std::min(n + 2, h - begin);
    for (std::size_t j = 0; j <= max_len; ++j) prev[j] = static_cast<double>(j);
    for (std::size_t r = 1; r <= n; ++r) {
      cur[0] = static_cast<double>(r);
      for (std::size_t j = 1; j <= max_len; ++j) {
        cur[j] = std::min({prev[j] + 1.0, cur[j - 1] + 1.0,
                           prev[j - 1] + sub[(r - 1) * h + begin + j - 1]});
      }
      std::swap(prev, cur);
    }
    for (std::size_t len = min_len; len <= max_len; ++len) {
      double cost = prev[len] / static_cast<double>(std::max(len, n));
      if (!best || cost < best->cost - kCostEpsilon) {
        best = MatchResult{begin, begin + len, cost};
      } else if (hint && std::abs(cost - best->cost) <= kCostEpsilon) {
        double here = std::abs(static_cast<double>(begin) / static_cast<double>(h) - *hint);
        double there = std::abs(static_cast<double>(best->begin) / static_cast<double>(h) - *hint);
        if (here < there - kCostEpsilon) best = MatchResult{begin, begin + len, cost};
      }
    }
  }
  if (!best || best->cost > threshold) return std::nullopt;
  return best;
}

}  // namespace

std::optional<MatchResult> locate_subsegment(std::span<const TokenSpan> haystack,
                                             std::span<const TokenSpan> needle, double threshold) {
  return best_window(haystack, needle, threshold, std::nullopt);
}

std::optional<MatchResult> locate_subsegment_near(std::span<const TokenSpan> haystack,
                                                  std::span<const TokenSpan> needle,
                                                  double threshold, double position_hint) {
  return best_window(haystack, needle, threshold, position_hint);
}

}  // namespace cx
