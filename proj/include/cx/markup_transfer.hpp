// markup_transfer.hpp - Carries inline annotations across a plain-text MT
// provider.
//
// The provider never sees markup. Each sentence is translated as a whole,
// then the text under every span is translated on its own and searched for
// in the translated sentence with locate_subsegment(); the annotation is
// re-created over the best matching window. A span whose edge falls inside
// a token (a reference mark glued to a word, part of a word) is placed on a
// verbatim occurrence with the same token-edge shape, nearest its source
// position, before falling back to the window search. Spans that cannot be matched
// are reported in `dropped` rather than guessed.

#pragma once

#include <string_view>
#include <vector>

#include "cx/doc_model.hpp"
#include "cx/provider.hpp"
#include "cx/segmenter.hpp"

namespace cx {

inline constexpr double kDefaultMatchThreshold = 0.34;

struct AdaptResult {
  RichText text;
  std::vector<SentenceRange> source_sentences;
  std::vector<SentenceRange> target_sentences;  // in `text`
  Correspondence correspondence;
  std::vector<Span> dropped;  // source spans, source offsets
};

AdaptResult adapt_rich(const MtProvider& provider, const RichText& rt, std::string_view src,
                       std::string_view tgt, double threshold = kDefaultMatchThreshold,
                       const AbbreviationTable& abbreviations = AbbreviationTable::defaults());

}  // namespace cx
