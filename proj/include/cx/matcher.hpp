// matcher.hpp - Approximate window search used to place annotations in MT
// output.
//
// The distance between a needle and a haystack window is a token-level
// Levenshtein distance where inserting or deleting a token costs 1 and
// substituting costs the normalized character distance of the two
// case-folded tokens (0 for equal tokens, at most 1). It is divided by
// max(|window|, |needle|) so costs fall in [0, 1].

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

#include "cx/tokenize.hpp"

namespace cx {

struct MatchResult {
  std::size_t begin = 0;  // token-index interval [begin, end) in the haystack
  std::size_t end = 0;
  double cost = 0.0;
  friend bool operator==(const MatchResult&, const MatchResult&) = default;
};

/// Costs closer than this are treated as ties.
inline constexpr double kCostEpsilon = 1e-12;

/// Substitution cost between two tokens: character Levenshtein of the
/// case-folded forms divided by the longer length.
double token_substitution_cost(std::string_view a, std::string_view b);

/// Best window of length in [max(1, n-2), n+2] (n = needle length).
/// Ties go to the leftmost start, then the shortest window. Returns nullopt
/// when the best cost exceeds `threshold`. Throws std::invalid_argument for
/// an empty needle or a threshold outside [0, 1].
std::optional<MatchResult> locate_subsegment(std::span<const TokenSpan> haystack,
                                             std::span<const TokenSpan> needle, double threshold);

/// Same search, but ties at the minimal cost are broken by closeness of the
/// window's relative start position (begin / |haystack|) to `position_hint`
/// in [0, 1], then leftmost, then shortest.
std::optional<MatchResult> locate_subsegment_near(std::span<const TokenSpan> haystack,
                                                  std::span<const TokenSpan> needle,
                                                  double threshold, double position_hint);

}  // namespace cx
