#include "cx/draft_store.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>
#include <thread>

namespace cx {

namespace fs = std::filesystem;

RevisionConflictError::RevisionConflictError(const std::string& id, long long expected,
                                             long long stored)
    : Error("draft " + id + ": expected revision " + std::to_string(expected) + ", stored is " +
            std::to_string(stored)),
      expected_(expected),
      stored_(stored) {}

DraftNotFoundError::DraftNotFoundError(const std::string& id) : Error("draft " + id + " not found") {}

CorruptDraftError::CorruptDraftError(const std::string& id, const std::string& why)
    : Error("draft " + id + " is corrupt: " + why), id_(id) {}

DraftSummary summarize(const Draft& d) {
  return DraftSummary{d.id,           d.source_lang, d.target_lang, d.source_title,
                      d.target_title, d.revision,    d.updated_at};
}

namespace {

void write_all_synced(const fs::path& path, const std::string& data) {
  int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644);
  if (fd < 0) throw StorageError("open " + path.string() + ": " + std::strerror(errno));
  std::size_t written = 0;
  while (written < data.size()) {
    auto n = ::write(fd, data.data() + written, data.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      int err = errno;
      ::close(fd);
      throw StorageError("write " + path.string() + ": " + std::strerror(err));
    }
    written += static_cast<std::size_t>(n);
  }
  if (::fsync(fd) != 0) {
    int err = errno;
    ::close(fd);
    throw StorageError("fsync " + path.string() + ": " + std::strerror(err));
  }
  ::close(fd);
}

std::string temp_suffix() {
  static std::atomic<unsigned long> counter{0};
  std::ostringstream os;
  os << ".tmp." << ::getpid() << "." << std::this_thread::get_id() << "." << counter++;
  return os.str();
}

}  // namespace

FileDraftStore::FileDraftStore(fs::path dir, Clock clock) : dir_(std::move(dir)), clock_(std::move(clock)) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (!fs::is_directory(dir_)) throw StorageError("draft directory unavailable: " + dir_.string());
}

fs::path FileDraftStore::path_for(const std::string& id) const { return dir_ / (id + ".json"); }

std::mutex& FileDraftStore::lock_for(const std::string& id) {
  std::lock_guard lock(locks_mu_);
  auto& slot = locks_[id];
  if (!slot) slot = std::make_unique<std::mutex>();
  return *slot;
}

std::optional<Draft> FileDraftStore::load_if_exists(const std::string& id) const {
  std::ifstream in(path_for(id), std::ios::binary);
  if (!in) {
    if (!fs::exists(path_for(id))) return std::nullopt;
    throw StorageError("cannot read " + path_for(id).string());
  }
  std::stringstream buf;
  buf << in.rdbuf();
  auto j = nlohmann::json::parse(buf.str(), nullptr, false);
  if (j.is_discarded()) throw CorruptDraftError(id, "not valid JSON");
  Draft d;
  try {
    d = draft_from_json(j);
  } catch (const InvalidDraftError& e) {
    throw CorruptDraftError(id, e.what());
  }
  if (d.id != id) throw CorruptDraftError(id, "file holds draft '" + d.id + "'");
  return d;
}

Draft FileDraftStore::load(const std::string& id) const {
  if (!valid_draft_id(id)) throw DraftNotFoundError(id);
  auto d = load_if_exists(id);
  if (!d) throw DraftNotFoundError(id);
  return std::move(*d);
}

long long FileDraftStore::save(const Draft& draft, long long expected_revision) {
  validate_draft(draft);
  std::lock_guard lock(lock_for(draft.id));

  auto stored = load_if_exists(draft.id);
  long long stored_revision = stored ? stored->revision : 0;
  if (stored_revision != expected_revision) {
    throw RevisionConflictError(draft.id, expected_revision, stored_revision);
  }
  if (stored) {
    for (const auto& u : draft.units) {
      const auto* before = stored->find_unit(u.source_block_id);
      if (before && before->mt_baseline && before->mt_baseline != u.mt_baseline) {
        throw InvalidDraftError("unit " + u.source_block_id + ": MT baseline cannot change");
      }
    }
  }

  Draft next = draft;
  next.revision = expected_revision + 1;
  auto now = clock_();
  next.created_at = stored ? stored->created_at : now;
  next.updated_at = now;

  auto target = path_for(draft.id);
  auto temp = target;
  temp += temp_suffix();
  write_all_synced(temp, draft_to_json(next).dump(2) + "\n");
  if (fault_hook_) {
    fault_hook_(FaultPoint::after_temp_write);
    fault_hook_(FaultPoint::before_rename);
  }
  std::error_code ec;
  fs::rename(temp, target, ec);
  if (ec) {
    fs::remove(temp, ec);
    throw StorageError("commit " + target.string() + " failed");
  }
  return next.revision;
}

std::vector<DraftSummary> FileDraftStore::list(const std::optional<LangPair>& filter) const {
  std::vector<DraftSummary> out;
  for (const auto& entry : fs::directory_iterator(dir_)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".json") continue;
    auto id = entry.path().stem().string();
    if (!valid_draft_id(id)) continue;
    std::optional<Draft> d;
    try {
      d = load_if_exists(id);
    } catch (const Error&) {
      continue;  // corrupt drafts surface through load()
    }
    if (!d) continue;
    if (filter && (d->source_lang != filter->first || d->target_lang != filter->second)) continue;
    out.push_back(summarize(*d));
  }
  std::sort(out.begin(), out.end(), [](const DraftSummary& a, const DraftSummary& b) {
    if (a.updated_at != b.updated_at) return a.updated_at > b.updated_at;
    return a.id < b.id;
  });
  return out;
}

}  // namespace cx
