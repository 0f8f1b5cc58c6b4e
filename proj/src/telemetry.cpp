#include "cx/telemetry.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

namespace cx {

using nlohmann::json;
namespace fs = std::filesystem;

std::string_view event_kind_name(EventKind kind) {
  switch (kind) {
    case EventKind::draft_created: return "draft_created";
    case EventKind::published: return "published";
    case EventKind::deleted: return "deleted";
  }
  return "published";
}

std::optional<EventKind> event_kind_from_name(std::string_view name) {
  if (name == "draft_created") return EventKind::draft_created;
  if (name == "published") return EventKind::published;
  if (name == "deleted") return EventKind::deleted;
  return std::nullopt;
}

EventLogError::EventLogError(const std::string& what, std::size_t line)
    : Error(line ? "event log line " + std::to_string(line) + ": " + what : "event log: " + what),
      reason_(what),
      line_(line) {}

MonotonicityError::MonotonicityError(Timestamp tail, Timestamp offered)
    : EventLogError("timestamp " + format_timestamp(offered) + " precedes log tail " +
                    format_timestamp(tail)) {}

json event_to_json(const Event& e) {
  return json{{"kind", event_kind_name(e.kind)},
              {"sourceLang", e.source_lang},
              {"targetLang", e.target_lang},
              {"title", e.title},
              {"timestamp", format_timestamp(e.timestamp)}};
}

Event event_from_json(const json& j) {
  if (!j.is_object()) throw EventLogError("event must be an object");
  auto str = [&](const char* name) {
    auto it = j.find(name);
    if (it == j.end() || !it->is_string()) {
      throw EventLogError(std::string("missing string field '") + name + "'");
    }
    return it->get<std::string>();
  };
  Event e;
  auto kind = event_kind_from_name(str("kind"));
  if (!kind) throw EventLogError("unknown event kind");
  e.kind = *kind;
  e.source_lang = str("sourceLang");
  e.target_lang = str("targetLang");
  e.title = str("title");
  auto t = parse_timestamp(str("timestamp"));
  if (!t) throw EventLogError("bad timestamp");
  e.timestamp = *t;
  return e;
}

namespace {

struct ReadResult {
  std::vector<Event> events;
  std::size_t valid_bytes = 0;  // prefix length that ends on a complete record
};

ReadResult read_log(const fs::path& path) {
  ReadResult out;
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    if (!fs::exists(path)) return out;
    throw EventLogError("cannot open " + path.string());
  }
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string data = buf.str();

  std::size_t pos = 0, line_no = 0;
  while (pos < data.size()) {
    ++line_no;
    auto nl = data.find('\n', pos);
    bool terminated = nl != std::string::npos;
    std::string_view line(data.data() + pos, (terminated ? nl : data.size()) - pos);
    std::size_t next = terminated ? nl + 1 : data.size();
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) {
      if (terminated) out.valid_bytes = next;
      pos = next;
      continue;
    }
    auto j = json::parse(line, nullptr, false);
    if (j.is_discarded()) {
      if (!terminated) break;
      throw EventLogError("not valid JSON", line_no);
    }
    try {
      out.events.push_back(event_from_json(j));
    } catch (const EventLogError& e) {
      if (!terminated) break;
      throw EventLogError(e.reason(), line_no);
    }
    if (terminated) out.valid_bytes = next;
    pos = next;
  }
  return out;
}

void append_synced(const fs::path& path, const std::string& data) {
  int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
  if (fd < 0) throw EventLogError("open " + path.string() + ": " + std::strerror(errno));
  std::size_t written = 0;
  while (written < data.size()) {
    auto n = ::write(fd, data.data() + written, data.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      int err = errno;
      ::close(fd);
      throw EventLogError("write " + path.string() + ": " + std::strerror(err));
    }
    written += static_cast<std::size_t>(n);
  }
  if (::fsync(fd) != 0) {
    int err = errno;
    ::close(fd);
    throw EventLogError("fsync " + path.string() + ": " + std::strerror(err));
  }
  ::close(fd);
}

}  // namespace

std::vector<Event> read_events(const fs::path& path) { return read_log(path).events; }

EventLog::EventLog(fs::path path, Clock clock) : path_(std::move(path)), clock_(std::move(clock)) {
  if (path_.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path_.parent_path(), ec);
  }
  auto existing = read_log(path_);
  if (fs::exists(path_) && fs::file_size(path_) != existing.valid_bytes) {
    fs::resize_file(path_, existing.valid_bytes);
  }
  for (const auto& e : existing.events) {
    if (!tail_ || e.timestamp > *tail_) tail_ = e.timestamp;
  }
}

void EventLog::append_locked(const Event& e) {
  if (tail_ && e.timestamp < *tail_) throw MonotonicityError(*tail_, e.timestamp);
  append_synced(path_, event_to_json(e).dump() + "\n");
  tail_ = e.timestamp;
}

void EventLog::append(const Event& e) {
  std::lock_guard lock(mu_);
  append_locked(e);
}

Event EventLog::record(EventKind kind, std::string source_lang, std::string target_lang,
                       std::string title) {
  std::lock_guard lock(mu_);
  Event e{kind, std::move(source_lang), std::move(target_lang), std::move(title), clock_()};
  if (tail_ && e.timestamp < *tail_) e.timestamp = *tail_;
  append_locked(e);
  return e;
}

std::vector<Event> EventLog::events() const {
  std::lock_guard lock(mu_);
  return read_events(path_);
}

std::optional<double> deletion_ratio(const std::vector<Event>& events) {
  std::size_t published = 0, deleted = 0;
  for (const auto& e : events) {
    if (e.kind == EventKind::published) ++published;
    if (e.kind == EventKind::deleted) ++deleted;
  }
  if (published == 0) return std::nullopt;
  return static_cast<double>(deleted) / static_cast<double>(published);
}

std::map<LangPair, std::size_t> pair_counts(const std::vector<Event>& events) {
  std::map<LangPair, std::size_t> counts;
  for (const auto& e : events) {
    if (e.kind == EventKind::published) ++counts[{e.source_lang, e.target_lang}];
  }
  return counts;
}

Stats compute_stats(const std::vector<Event>& events) {
  Stats s;
  for (const auto& e : events) {
    switch (e.kind) {
      case EventKind::published: ++s.published; break;
      case EventKind::deleted: ++s.deleted; break;
      case EventKind::draft_created: ++s.drafts_created; break;
    }
  }
  s.deletion_ratio = deletion_ratio(events);
  s.pair_counts = pair_counts(events);
  return s;
}

json stats_to_json(const Stats& stats) {
  json pairs = json::array();
  for (const auto& [pair, count] : stats.pair_counts) {
    pairs.push_back({{"source", pair.first}, {"target", pair.second}, {"count", count}});
  }
  return json{{"published", stats.published},
              {"deleted", stats.deleted},
              {"draftsCreated", stats.drafts_created},
              {"deletionRatio", stats.deletion_ratio ? json(*stats.deletion_ratio) : json(nullptr)},
              {"pairCounts", std::move(pairs)}};
}

}  // namespace cx
