// draft_store.hpp - Revisioned draft persistence for autosave.
//
// Writes use optimistic concurrency: a save succeeds only if the stored
// revision equals the caller's expected revision, and then stores
// expected + 1. The file store commits by writing a temporary file and
// renaming it over drafts/<id>.json, so a crash at any point leaves the
// previous version readable.

#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "cx/draft.hpp"
#include "cx/provider.hpp"

namespace cx {

class RevisionConflictError : public Error {
 public:
  RevisionConflictError(const std::string& id, long long expected, long long stored);
  long long expected() const { return expected_; }
  long long stored() const { return stored_; }

 private:
  long long expected_;
  long long stored_;
};

class DraftNotFoundError : public Error {
 public:
  explicit DraftNotFoundError(const std::string& id);
};

class CorruptDraftError : public Error {
 public:
  CorruptDraftError(const std::string& id, const std::string& why);
  const std::string& id() const { return id_; }

 private:
  std::string id_;
};

class StorageError : public Error {
 public:
  using Error::Error;
};

struct DraftSummary {
  std::string id;
  std::string source_lang;
  std::string target_lang;
  std::string source_title;
  std::string target_title;
  long long revision = 0;
  Timestamp updated_at{};
  friend bool operator==(const DraftSummary&, const DraftSummary&) = default;
};

DraftSummary summarize(const Draft& d);

class DraftStore {
 public:
  virtual ~DraftStore() = default;

  /// Returns the new revision (expected_revision + 1).
  virtual long long save(const Draft& draft, long long expected_revision) = 0;
  virtual Draft load(const std::string& id) const = 0;
  /// Newest first (updatedAt descending, then id).
  virtual std::vector<DraftSummary> list(const std::optional<LangPair>& filter = {}) const = 0;
};

class FileDraftStore final : public DraftStore {
 public:
  enum class FaultPoint { after_temp_write, before_rename };
  using Clock = std::function<Timestamp()>;

  explicit FileDraftStore(std::filesystem::path dir, Clock clock = now_ms);

  long long save(const Draft& draft, long long expected_revision) override;
  Draft load(const std::string& id) const override;
  std::vector<DraftSummary> list(const std::optional<LangPair>& filter = {}) const override;

  /// Test hook called at each commit stage; throwing from it simulates a crash.
  void set_fault_hook(std::function<void(FaultPoint)> hook) { fault_hook_ = std::move(hook); }

  std::filesystem::path path_for(const std::string& id) const;
  const std::filesystem::path& directory() const { return dir_; }

 private:
  std::optional<Draft> load_if_exists(const std::string& id) const;
  std::mutex& lock_for(const std::string& id);

  std::filesystem::path dir_;
  Clock clock_;
  std::function<void(FaultPoint)> fault_hook_;
  std::mutex locks_mu_;
  std::map<std::string, std::unique_ptr<std::mutex>> locks_;
};

inline long long save_draft(DraftStore& store, const Draft& d, long long expected_revision) {
  return store.save(d, expected_revision);
}
inline Draft load_draft(const DraftStore& store, const std::string& id) { return store.load(id); }
inline std::vector<DraftSummary> list_drafts(const DraftStore& store,
                                             const std::optional<LangPair>& filter = {}) {
  return store.list(filter);
}

}  // namespace cx
