#include "cx/markup_transfer.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "cx/matcher.hpp"
#include "cx/text.hpp"
#include "cx/tokenize.hpp"

namespace cx {

namespace {

struct Placement {
  Span span;  // output offsets
  double cost;
  std::size_t source_index;
};

bool partially_overlap(const Span& a, const Span& b) {
  bool disjoint = a.end <= b.start || b.end <= a.start;
  return !disjoint && !a.contains(b) && !b.contains(a);
}

// Offset in the translated sentence for a span without matchable text.
// Inside a token it keeps its distance from the token start; in the gap
// after a token it keeps its distance from that token's end, without
// passing the next token; otherwise it sits before the token with the same
// index.
std::size_t positional_offset(const std::vector<TokenSpan>& source_tokens,
                              const std::vector<TokenSpan>& target_tokens, std::size_t rel,
                              std::size_t target_length) {
  std::size_t before = 0;
  while (before < source_tokens.size() && source_tokens[before].end <= rel) ++before;
  if (before < source_tokens.size() && source_tokens[before].start < rel) {
    if (before >= target_tokens.size()) return target_length;
    const auto& t = target_tokens[before];
    return std::min(t.start + (rel - source_tokens[before].start), t.end);
  }
  if (before == 0) return target_tokens.empty() ? target_length : target_tokens[0].start;
  if (before - 1 >= target_tokens.size()) return target_length;
  std::size_t limit = before < target_tokens.size() ? target_tokens[before].start : target_length;
  return std::min(target_tokens[before - 1].end + (rel - source_tokens[before - 1].end), limit);
}

bool inside_token(const std::vector<TokenSpan>& tokens, std::size_t pos) {
  return std::any_of(tokens.begin(), tokens.end(),
                     [&](const TokenSpan& t) { return t.start < pos && pos < t.end; });
}

// Verbatim occurrence of `needle` in `haystack` whose edges fall inside
// tokens exactly where the source span's did, nearest to `hint` (a
// fraction of the haystack length); ties go to the leftmost.
std::optional<std::size_t> exact_occurrence(std::u32string_view haystack,
                                            const std::vector<TokenSpan>& tokens,
                                            std::u32string_view needle, bool start_inside,
                                            bool end_inside, double hint) {
  if (needle.empty()) return std::nullopt;
  const double want = hint * static_cast<double>(haystack.size());
  std::optional<std::size_t> best;
  double best_distance = 0.0;
  for (auto pos = haystack.find(needle); pos != std::u32string_view::npos;
       pos = haystack.find(needle, pos + 1)) {
    if (inside_token(tokens, pos) != start_inside) continue;
    if (inside_token(tokens, pos + needle.size()) != end_inside) continue;
    double distance = std::abs(static_cast<double>(pos) - want);
    if (!best || distance < best_distance) {
      best = pos;
      best_distance = distance;
    }
  }
  return best;
}

}  // namespace

AdaptResult adapt_rich(const MtProvider& provider, const RichText& rt, std::string_view src,
                       std::string_view tgt, double threshold,
                       const AbbreviationTable& abbreviations) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw std::invalid_argument("adapt_rich: threshold outside [0,1]");
  }
  if (!provider.supports(src, tgt)) {
    throw UnsupportedPairError(provider.name(), std::string(src), std::string(tgt));
  }

  AdaptResult result;
  result.source_sentences = segment_sentences(rt, src, abbreviations);
  const auto& sentences = result.source_sentences;

  // Whitespace outside sentences (leading, between sentences, trailing) is
  // carried over verbatim; gap k precedes sentence k and gap S is the tail.
  const std::size_t count = sentences.size();
  std::vector<std::size_t> gap_source(count + 1), gap_target(count + 1);
  std::vector<std::u32string> translations;
  std::u32string out;
  for (std::size_t k = 0; k <= count; ++k) {
    std::size_t from = k == 0 ? 0 : sentences[k - 1].end;
    std::size_t to = k == count ? rt.text.size() : sentences[k].start;
    gap_source[k] = from;
    gap_target[k] = out.size();
    out.append(rt.text, from, to - from);
    if (k == count) break;
    std::u32string_view source_view(rt.text.data() + sentences[k].start,
                                    sentences[k].end - sentences[k].start);
    translations.push_back(trim(utf8::decode(provider.translate(utf8::encode(source_view), src, tgt))));
    result.target_sentences.push_back(SentenceRange{out.size(), out.size() + translations.back().size()});
    out += translations.back();
  }
  auto gap_of = [&](std::size_t k, std::size_t pos) { return gap_target[k] + (pos - gap_source[k]); };
  auto gap_end = [&](std::size_t k) { return k == count ? rt.text.size() : sentences[k].start; };

  // A span lying within one gap maps one-to-one. Any other span belongs to
  // the last sentence starting at or before it; spans never cross a
  // sentence start because such spans suppress that boundary.
  std::vector<std::vector<std::size_t>> assigned(count);
  std::vector<Placement> placements;
  for (std::size_t si = 0; si < rt.spans.size(); ++si) {
    const Span& s = rt.spans[si];
    std::size_t k = 0;
    while (k < count && sentences[k].start <= s.start) ++k;
    if (s.start >= gap_source[k] && s.end <= gap_end(k)) {
      placements.push_back({Span{gap_of(k, s.start), gap_of(k, s.end), s.annotation}, 0.0, si});
    } else {
      assigned[k == 0 ? 0 : k - 1].push_back(si);
    }
  }

  for (std::size_t k = 0; k < count; ++k) {
    const auto& sentence = sentences[k];
    const auto& translated = translations[k];
    std::u32string_view source_view(rt.text.data() + sentence.start, sentence.end - sentence.start);
    const std::size_t offset = result.target_sentences[k].start;
    auto source_tokens = tokenize(source_view, src);
    auto target_tokens = tokenize(std::u32string_view(translated), tgt);

    // Edges that reach into the surrounding gaps keep their gap offsets
    // when the sentence part was placed against the sentence edge.
    // The span text is matched trimmed; whitespace it covered at either
    // edge is re-covered as far as the translation has whitespace there.
    auto extend = [&](const Span& s, Span placed) {
      std::size_t rel_start = std::clamp(s.start, sentence.start, sentence.end) - sentence.start;
      std::size_t rel_end = std::clamp(s.end, sentence.start, sentence.end) - sentence.start;
      if (placed.end > placed.start) {
        std::size_t lead = 0, trail = 0;
        while (rel_start + lead < rel_end && is_space(source_view[rel_start + lead])) ++lead;
        while (rel_end - trail > rel_start + lead && is_space(source_view[rel_end - trail - 1])) ++trail;
        for (; lead > 0 && placed.start > offset && is_space(out[placed.start - 1]); --lead) --placed.start;
        for (; trail > 0 && placed.end < offset + translated.size() && is_space(out[placed.end]); --trail) {
          ++placed.end;
        }
      }
      if (s.start < sentence.start && placed.start == offset) placed.start = gap_of(k, s.start);
      if (s.end > sentence.end && placed.end == offset + translated.size()) placed.end = gap_of(k + 1, s.end);
      return placed;
    };

    for (std::size_t si : assigned[k]) {
      const Span& s = rt.spans[si];
      std::size_t rel_start = std::clamp(s.start, sentence.start, sentence.end) - sentence.start;
      std::size_t rel_end = std::clamp(s.end, sentence.start, sentence.end) - sentence.start;
      std::vector<TokenSpan> needle;
      std::u32string span_text;
      if (rel_end > rel_start) {
        auto covered = utf8::encode(source_view.substr(rel_start, rel_end - rel_start));
        span_text = trim(utf8::decode(provider.translate(covered, src, tgt)));
        needle = tokenize(std::u32string_view(span_text), tgt);
      }
      if (needle.empty()) {
        std::size_t at = offset + positional_offset(source_tokens, target_tokens, rel_start,
                                                    translated.size());
        std::size_t to = rel_end > rel_start ? offset + positional_offset(source_tokens, target_tokens,
                                                                          rel_end, translated.size())
                                             : at;
        placements.push_back({extend(s, Span{at, std::max(at, to), s.annotation}), 0.0, si});
        continue;
      }
      std::size_t first_token = 0;
      while (first_token < source_tokens.size() && source_tokens[first_token].end <= rel_start) {
        ++first_token;
      }
      double hint = source_tokens.empty()
                        ? 0.0
                        : static_cast<double>(first_token) / static_cast<double>(source_tokens.size());
      bool start_inside = inside_token(source_tokens, rel_start);
      bool end_inside = inside_token(source_tokens, rel_end);
      if (start_inside || end_inside) {
        double char_hint = static_cast<double>(rel_start) / static_cast<double>(source_view.size());
        if (auto pos = exact_occurrence(translated, target_tokens, span_text, start_inside,
                                        end_inside, char_hint)) {
          placements.push_back(
              {extend(s, Span{offset + *pos, offset + *pos + span_text.size(), s.annotation}), 0.0, si});
          continue;
        }
      }
      auto match = locate_subsegment_near(target_tokens, needle, threshold, hint);
      if (!match) {
        result.dropped.push_back(s);
        continue;
      }
      placements.push_back({extend(s, Span{offset + target_tokens[match->begin].start,
                                           offset + target_tokens[match->end - 1].end, s.annotation}),
                            match->cost, si});
    }
  }

  // Overlapping reconstructions: lower cost wins, then source order.
  std::vector<std::size_t> order(placements.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (placements[a].cost != placements[b].cost) return placements[a].cost < placements[b].cost;
    return placements[a].source_index < placements[b].source_index;
  });
  std::vector<bool> accepted(placements.size(), false);
  std::vector<std::size_t> kept;
  for (std::size_t idx : order) {
    bool clash = std::any_of(kept.begin(), kept.end(), [&](std::size_t other) {
      return partially_overlap(placements[idx].span, placements[other].span);
    });
    if (clash) {
      result.dropped.push_back(rt.spans[placements[idx].source_index]);
    } else {
      accepted[idx] = true;
      kept.push_back(idx);
    }
  }

  std::vector<std::size_t> by_source;
  for (std::size_t i = 0; i < placements.size(); ++i) {
    if (accepted[i]) by_source.push_back(i);
  }
  std::sort(by_source.begin(), by_source.end(), [&](std::size_t a, std::size_t b) {
    return placements[a].source_index < placements[b].source_index;
  });
  result.text.text = std::move(out);
  for (std::size_t i : by_source) result.text.spans.push_back(placements[i].span);
  sort_spans(result.text.spans);

  result.correspondence = sentence_correspondence(result.source_sentences, result.target_sentences);
  return result;
}

}  // namespace cx
