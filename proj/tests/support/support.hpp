// support.hpp - Shared test fixtures, generators and reference oracles.
//
// Oracles here are written independently of the library: they favour
// obviously-correct enumeration over speed and must not call the function
// they check.

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "cx/adaptation.hpp"
#include "cx/doc_model.hpp"
#include "cx/draft.hpp"
#include "cx/service.hpp"
#include "cx/telemetry.hpp"

namespace cxtest {

using Rng = std::mt19937_64;

std::filesystem::path fixture_path(std::string_view relative);
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(std::string_view name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

struct CorpusDoc {
  std::string lang;
  std::string title;
  std::filesystem::path path;
};

/// Every corpus/<lang>/<Title>.html file, sorted by path.
std::vector<CorpusDoc> corpus_documents();

// ---- generators -------------------------------------------------------

/// Random rich text with nested annotations of depth <= max_depth, using
/// markup-significant characters, astral-plane characters and zero-length
/// opaque spans.
cx::RichText random_rich_text(Rng& rng, int max_depth = 3);

/// Random document of paragraphs, headings, list items and opaque blocks.
cx::AnnotatedDoc random_document(Rng& rng, int max_depth = 3);

/// Sentences of words separated by spaces or newlines, each ending in a
/// terminator, sometimes with leading or trailing whitespace, with
/// spans (nesting <= 3) and zero-length spans on word edges, inside split
/// words and around glued reference marks such as "[1]".
cx::RichText random_identity_input(Rng& rng);

/// One sentence of distinct, punctuation-free words with a single span
/// over the token range [first, last).
struct ReverseCase {
  cx::RichText input;
  std::vector<std::string> words;
  std::size_t first = 0;
  std::size_t last = 0;
};
ReverseCase random_reverse_case(Rng& rng);

/// A unit of `tokens` words ("w0 w1 ..."), used for provenance cases.
cx::RichText words_text(std::size_t tokens, std::string_view prefix = "w");

cx::Draft make_draft(const std::string& id, const std::string& src = "es",
                     const std::string& tgt = "ca", const std::string& source_title = "Berlín");

/// Service over the fixture corpus and entity map with an identity provider
/// (es-ca, es-pt, en-es) and a dictionary provider (es-ca). Drafts, the
/// published output and the event log live in a private temp directory; the
/// log starts as a copy of the fixture log when `seed_event_log` is set.
class HermeticService {
 public:
  explicit HermeticService(bool seed_event_log = false);
  cx::CxService& service() { return *service_; }
  const cx::ServiceConfig& config() const { return config_; }
  const TempDir& dir() const { return dir_; }

 private:
  TempDir dir_;
  cx::ServiceConfig config_;
  std::unique_ptr<cx::CxService> service_;
};

/// Minimal {"draft": ..., "expectedRevision": ...} PUT body for one source
/// block translated with the identity provider.
nlohmann::json put_body(const std::string& source_title, long long expected_revision,
                        const std::vector<std::pair<std::string, cx::RichText>>& units,
                        const std::string& src = "es", const std::string& tgt = "ca");

// ---- oracles ----------------------------------------------------------

/// Removes tags and comments and decodes character references.
std::string strip_tags(std::string_view html);

/// Plain weighted edit distance written as memoized recursion over the
/// definition; substitution = ASCII-case-folded character Levenshtein / max length.
double oracle_substitution_cost(const std::string& a, const std::string& b);

struct OracleMatch {
  std::size_t begin = 0;
  std::size_t end = 0;
  double cost = 0;
};

/// Enumerates every window of length [max(1, n-2), n+2], keeps the minimal
/// cost; ties (within 1e-12) to the leftmost, then shortest window.
std::optional<OracleMatch> brute_force_locate(const std::vector<std::string>& haystack,
                                              const std::vector<std::string>& needle,
                                              double threshold);

/// Exponential textbook recursion.
std::size_t naive_edit_distance(const std::vector<std::string>& a, const std::vector<std::string>& b);
/// Same recursion with memoization, for exhaustive sweeps.
std::size_t memo_edit_distance(const std::vector<std::string>& a, const std::vector<std::string>& b);

struct SitelinkRow {
  std::string entity;
  std::string lang;
  std::string title;
};

/// Parses entity TSV rows without validation.
std::vector<SitelinkRow> read_sitelink_rows(const std::filesystem::path& path);

/// Linear scan over the rows applying the adaptation rules.
cx::LinkAdaptation oracle_adapt_link(const std::vector<SitelinkRow>& rows, const std::string& title,
                                     const std::string& src, const std::string& tgt);

std::map<std::pair<std::string, std::string>, std::size_t> oracle_pair_counts(
    const std::vector<cx::Event>& events);

}  // namespace cxtest
