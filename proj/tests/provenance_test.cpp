#include <gtest/gtest.h>

#include <stdexcept>

#include "cx/provenance.hpp"
#include "cx/text.hpp"
#include "support.hpp"

using namespace cx;

namespace {

RichText rt(std::string_view s) { return RichText{utf8::decode(s), {}}; }

// Baseline of n tokens with the first `edited` tokens replaced in current.
TranslationUnit mt_unit(const std::string& id, std::size_t n, std::size_t edited) {
  TranslationUnit u;
  u.source_block_id = id;
  u.origin = Origin::mt("identity");
  u.mt_baseline = cxtest::words_text(n);
  std::string current;
  for (std::size_t i = 0; i < n; ++i) {
    if (i) current += ' ';
    current += (i < edited ? "e" : "w") + std::to_string(i);
  }
  u.current = rt(current);
  return u;
}

std::vector<std::string> random_tokens(cxtest::Rng& rng, std::size_t max_len, int symbols) {
  std::vector<std::string> out(rng() % (max_len + 1));
  for (auto& t : out) t = std::string(1, static_cast<char>('a' + rng() % symbols));
  return out;
}

}  // namespace

TEST(TokenEditDistance, Examples) {
  EXPECT_EQ(token_edit_distance({"a", "b", "c"}, {"a", "b", "c"}), 0u);
  EXPECT_EQ(token_edit_distance({"a", "b", "c", "d"}, {"a", "b", "x", "d"}), 1u);
  EXPECT_EQ(token_edit_distance({}, {"a", "b"}), 2u);
  EXPECT_EQ(token_edit_distance({"A"}, {"a"}), 1u);
}

TEST(TokenEditDistance, MatchesNaiveRecursion) {
  cxtest::Rng rng(8);
  for (int i = 0; i < 400; ++i) {
    auto a = random_tokens(rng, 8, 3), b = random_tokens(rng, 8, 3);
    ASSERT_EQ(token_edit_distance(a, b), cxtest::naive_edit_distance(a, b));
  }
}

TEST(TokenEditDistance, SymmetryAndTriangle) {
  cxtest::Rng rng(12);
  for (int i = 0; i < 2000; ++i) {
    auto a = random_tokens(rng, 10, 4), b = random_tokens(rng, 10, 4), c = random_tokens(rng, 10, 4);
    auto ab = token_edit_distance(a, b);
    ASSERT_EQ(ab, token_edit_distance(b, a));
    ASSERT_LE(token_edit_distance(a, c), ab + token_edit_distance(b, c));
  }
}

TEST(UnmodifiedRatio, Examples) {
  EXPECT_EQ(unmodified_ratio(rt("a b c d"), rt("a b x d")), 0.75);
  EXPECT_EQ(unmodified_ratio(rt("Berlín es la capital."), rt("Berlín es la capital.")), 1.0);
  EXPECT_EQ(unmodified_ratio(rt("a b"), rt("c d")), 0.0);
  EXPECT_EQ(unmodified_ratio(rt(""), rt("")), 1.0);
  EXPECT_EQ(unmodified_ratio(rt(""), rt("a b")), 0.0);
}

TEST(UnmodifiedRatio, AlwaysInUnitRange) {
  cxtest::Rng rng(13);
  for (int i = 0; i < 500; ++i) {
    double r = unmodified_ratio(cxtest::random_rich_text(rng), cxtest::random_rich_text(rng));
    ASSERT_GE(r, 0.0);
    ASSERT_LE(r, 1.0);
  }
}

TEST(EvaluateDraft, UntouchedUnitWarnsTwice) {
  auto d = cxtest::make_draft("d1");
  d.units.push_back(mt_unit("cxb0", 12, 0));
  auto r = evaluate_draft(d);
  EXPECT_EQ(r.overall, 1.0);
  EXPECT_EQ(r.warnings, (std::vector<ProvenanceWarning>{{"cxb0", 1.0, 0.85}, {std::nullopt, 1.0, 0.75}}));
  EXPECT_TRUE(r.has_overall_warning());
}

TEST(EvaluateDraft, HalfEditedUnitIsQuiet) {
  auto d = cxtest::make_draft("d1");
  d.units.push_back(mt_unit("cxb0", 12, 6));
  auto r = evaluate_draft(d);
  EXPECT_EQ(r.find("cxb0")->ratio, 0.5);
  EXPECT_EQ(r.overall, 0.5);
  EXPECT_TRUE(r.warnings.empty());
}

TEST(EvaluateDraft, MixedDraftWeightedMean) {
  auto d = cxtest::make_draft("d1");
  d.units.push_back(mt_unit("cxb0", 20, 0));
  d.units.push_back(mt_unit("cxb1", 20, 12));
  auto r = evaluate_draft(d);
  EXPECT_DOUBLE_EQ(r.find("cxb1")->ratio, 0.4);
  EXPECT_DOUBLE_EQ(r.overall, (20 * 1.0 + 20 * 0.4) / 40);
  EXPECT_EQ(r.warnings, (std::vector<ProvenanceWarning>{{"cxb0", 1.0, 0.85}}));
  EXPECT_FALSE(r.has_overall_warning());
}

TEST(EvaluateDraft, ShortUnitsOnlyCountTowardsOverall) {
  auto d = cxtest::make_draft("d1");
  d.units.push_back(mt_unit("cxb0", 9, 0));
  auto r = evaluate_draft(d);
  EXPECT_EQ(r.warnings, (std::vector<ProvenanceWarning>{{std::nullopt, 1.0, 0.75}}));
}

TEST(EvaluateDraft, SourceAndScratchUnitsNeverWarn) {
  auto d = cxtest::make_draft("d1");
  TranslationUnit src{"cxb0", Origin::source(), std::nullopt, cxtest::words_text(30), {}};
  TranslationUnit scratch{"cxb1", Origin::scratch(), std::nullopt, cxtest::words_text(30), {}};
  d.units = {src, scratch};
  auto r = evaluate_draft(d);
  EXPECT_TRUE(r.per_unit.empty());
  EXPECT_TRUE(r.warnings.empty());
  EXPECT_EQ(r.overall, 0.0);
}

TEST(EvaluateDraft, MonotoneTrigger) {
  ProvenanceConfig cfg;
  for (std::size_t n = 10; n <= 30; n += 5) {
    bool warned = false;
    for (std::size_t edited = n + 1; edited-- > 0;) {
      auto d = cxtest::make_draft("d1");
      d.units.push_back(mt_unit("cxb0", n, edited));
      auto r = evaluate_draft(d, cfg);
      bool now = !r.warnings.empty() && r.warnings[0].unit_id == "cxb0";
      ASSERT_TRUE(!warned || now) << n << " " << edited;
      warned = now;
    }
    EXPECT_TRUE(warned);
  }
}

TEST(ProvenanceConfig, Validation) {
  EXPECT_NO_THROW(ProvenanceConfig{}.validate());
  EXPECT_THROW((ProvenanceConfig{1.5, 0.75, 10}.validate()), std::invalid_argument);
  EXPECT_THROW((ProvenanceConfig{0.85, -0.1, 10}.validate()), std::invalid_argument);
  EXPECT_THROW((ProvenanceConfig{0.85, 0.75, -1}.validate()), std::invalid_argument);
}

TEST(ProvenanceReport, Json) {
  auto d = cxtest::make_draft("d1");
  d.units.push_back(mt_unit("cxb0", 12, 0));
  auto j = provenance_report_to_json(evaluate_draft(d));
  EXPECT_EQ(j["perUnit"]["cxb0"], 1.0);
  EXPECT_EQ(j["overall"], 1.0);
  ASSERT_EQ(j["warnings"].size(), 2u);
  EXPECT_EQ(j["warnings"][0]["scope"], "unit");
  EXPECT_EQ(j["warnings"][0]["unitId"], "cxb0");
  EXPECT_EQ(j["warnings"][1]["scope"], "overall");
  EXPECT_TRUE(j["warnings"][1]["unitId"].is_null());
  EXPECT_EQ(j["warnings"][1]["threshold"], 0.75);
}
