// service.hpp - HTTP facade over the translation library.
//
// Endpoints (JSON bodies, errors as {"error": "..."}):
//   GET  /api/v1/page/{lang}/{title}
//   POST /api/v1/translate            {provider, srcLang, tgtLang, blockHtml, threshold?}
//   GET  /api/v1/draft/{id}
//   PUT  /api/v1/draft/{id}           {expectedRevision, draft}
//   GET  /api/v1/drafts?from=&to=
//   POST /api/v1/publish/{id}
//   GET  /api/v1/providers?from=&to=
//   GET  /api/v1/stats
//
// Each endpoint has a handler method returning status and body, so the
// whole contract can be exercised without sockets; mount() binds them to an
// httplib server.

#pragma once

#include <atomic>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <thread>

#include <json.hpp>

#include "cx/adaptation.hpp"
#include "cx/draft_store.hpp"
#include "cx/provenance.hpp"
#include "cx/provider.hpp"
#include "cx/segmenter.hpp"
#include "cx/service_config.hpp"
#include "cx/telemetry.hpp"

namespace httplib {
class Server;
}

namespace cx {

/// The source could not be retrieved (as opposed to not existing).
class FetchError : public Error {
 public:
  using Error::Error;
};

class SourceFetcher {
 public:
  virtual ~SourceFetcher() = default;
  /// Article HTML, or nullopt if there is no such article. Throws FetchError.
  virtual std::optional<std::string> fetch(const std::string& lang, const std::string& title) const = 0;
};

/// Reads <dir>/<lang>/<Title>.html, spaces in the title stored as '_'.
class CorpusFetcher final : public SourceFetcher {
 public:
  explicit CorpusFetcher(std::filesystem::path dir);
  std::optional<std::string> fetch(const std::string& lang, const std::string& title) const override;
  static std::filesystem::path relative_path(const std::string& lang, const std::string& title);

 private:
  std::filesystem::path dir_;
};

struct ServiceParts {
  std::shared_ptr<const SourceFetcher> fetcher;
  std::shared_ptr<const EntityMap> entities;
  std::shared_ptr<ProviderRegistry> providers;
  std::shared_ptr<DraftStore> drafts;
  std::shared_ptr<EventLog> events;
  AbbreviationTable abbreviations = AbbreviationTable::defaults();
  ProvenanceConfig provenance;
  double match_threshold = kDefaultMatchThreshold;
  std::filesystem::path published_dir;
};

/// Validates the config and constructs every component it names.
ServiceParts build_service_parts(const ServiceConfig& cfg);

struct Response {
  int status = 200;
  nlohmann::json body;
};

class CxService {
 public:
  explicit CxService(ServiceParts parts);

  Response get_page(const std::string& lang, const std::string& title) const;
  Response translate(const std::string& request_body) const;
  Response get_draft(const std::string& id) const;
  Response put_draft(const std::string& id, const std::string& request_body);
  Response list_drafts(const std::optional<std::string>& from, const std::optional<std::string>& to) const;
  Response publish(const std::string& id);
  Response list_providers(const std::optional<std::string>& from,
                          const std::optional<std::string>& to) const;
  Response stats() const;

  void mount(httplib::Server& server);

  const ServiceParts& parts() const { return parts_; }

 private:
  std::optional<AnnotatedDoc> load_source(const std::string& lang, const std::string& title) const;

  ServiceParts parts_;
};

/// Source payload for GET /page: blocks with id, kind, html, content and
/// sentence ranges, plus categories.
nlohmann::json page_payload(const AnnotatedDoc& doc, const AbbreviationTable& abbreviations);
/// {id, kind, html, content, level? (headings), ordered? (list items)}
nlohmann::json block_to_json(const Block& b);
nlohmann::json correspondence_to_json(const Correspondence& c);
nlohmann::json link_report_to_json(const LinkReport& r);
nlohmann::json draft_summary_to_json(const DraftSummary& s);

/// Runs a CxService on a background thread.
inline constexpr std::size_t kHttpWorkerThreads = 32;

class HttpServer {
 public:
  explicit HttpServer(CxService& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds and starts serving; port 0 picks a free port. Returns the bound port.
  int start(const std::string& host, int port);
  /// Stops accepting and waits for in-flight requests to finish.
  void stop();
  /// Blocks until stop() is called from another thread or a signal handler.
  void wait();
  int port() const { return port_; }

 private:
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  int port_ = 0;
};

}  // namespace cx
