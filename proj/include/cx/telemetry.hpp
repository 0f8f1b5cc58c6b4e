// telemetry.hpp - Append-only lifecycle event log and the statistics derived from it.
//
// One JSON object per line:
//   {"kind":"published","sourceLang":"es","targetLang":"ca","title":"Berlín","timestamp":"..."}

#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cx/provider.hpp"
#include "cx/timestamp.hpp"

namespace cx {

enum class EventKind { draft_created, published, deleted };

std::string_view event_kind_name(EventKind kind);
std::optional<EventKind> event_kind_from_name(std::string_view name);

struct Event {
  EventKind kind = EventKind::published;
  std::string source_lang;
  std::string target_lang;
  std::string title;
  Timestamp timestamp{};
  friend bool operator==(const Event&, const Event&) = default;
};

class EventLogError : public Error {
 public:
  EventLogError(const std::string& what, std::size_t line = 0);
  /// 1-based, 0 when not tied to a line.
  std::size_t line() const { return line_; }
  const std::string& reason() const { return reason_; }

 private:
  std::string reason_;
  std::size_t line_;
};

class MonotonicityError : public EventLogError {
 public:
  MonotonicityError(Timestamp tail, Timestamp offered);
};

nlohmann::json event_to_json(const Event& e);
/// Throws EventLogError (line 0).
Event event_from_json(const nlohmann::json& j);

/// Reads a log. A missing file is an empty log; blank lines are ignored;
/// an unparsable final line without a newline is a write in progress and
/// is skipped; any other bad line throws EventLogError with its line number.
std::vector<Event> read_events(const std::filesystem::path& path);

/// Single-writer appender. Opening drops a torn final line left by a crash.
class EventLog {
 public:
  using Clock = std::function<Timestamp()>;

  explicit EventLog(std::filesystem::path path, Clock clock = now_ms);

  /// Durable append; throws MonotonicityError if e is older than the tail.
  void append(const Event& e);
  /// Appends with timestamp max(clock(), tail) so concurrent callers never
  /// violate monotonicity.
  Event record(EventKind kind, std::string source_lang, std::string target_lang, std::string title);

  std::vector<Event> events() const;
  const std::filesystem::path& path() const { return path_; }

 private:
  void append_locked(const Event& e);

  std::filesystem::path path_;
  Clock clock_;
  mutable std::mutex mu_;
  std::optional<Timestamp> tail_;
};

inline void record_event(EventLog& log, const Event& e) { log.append(e); }

/// deleted / published; nullopt when nothing was published.
std::optional<double> deletion_ratio(const std::vector<Event>& events);
/// Published events per (source, target).
std::map<LangPair, std::size_t> pair_counts(const std::vector<Event>& events);

struct Stats {
  std::size_t published = 0;
  std::size_t deleted = 0;
  std::size_t drafts_created = 0;
  std::optional<double> deletion_ratio;
  std::map<LangPair, std::size_t> pair_counts;
};

Stats compute_stats(const std::vector<Event>& events);
/// {"published","deleted","draftsCreated","deletionRatio"(null when absent),
///  "pairCounts":[{"source","target","count"}] sorted by pair}
nlohmann::json stats_to_json(const Stats& stats);

}  // namespace cx
