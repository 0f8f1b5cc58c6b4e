// service_config.hpp - Service configuration file.
//
// JSON object; relative paths are resolved against the file's directory.
//   {
//     "corpusDir": "corpus", "entityMap": "entities.tsv",
//     "draftDir": "state/drafts", "eventLog": "state/events.ndjson",
//     "publishedDir": "state/published", "abbreviationsDir": "data/abbreviations",
//     "listen": "127.0.0.1:8080", "matchThreshold": 0.34,
//     "provenance": {"unitThreshold": 0.85, "overallThreshold": 0.75, "minUnitTokens": 10},
//     "providers": [
//       {"name": "identity", "kind": "identity", "pairs": [["es", "ca"]]},
//       {"name": "lex", "kind": "dictionary", "pairs": [["es", "ca"]], "lexicon": "es-ca.tsv"},
//       {"name": "apertium", "kind": "remote", "pairs": [["es", "ca"]],
//        "baseUrl": "http://localhost:2737", "maxInFlight": 4, "timeoutMs": 10000, "retries": 1}
//     ]
//   }

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cx/markup_transfer.hpp"
#include "cx/provenance.hpp"
#include "cx/provider.hpp"

namespace cx {

class ConfigError : public Error {
 public:
  using Error::Error;
};

struct ProviderDecl {
  std::string name;
  ProviderKind kind = ProviderKind::identity;
  std::vector<LangPair> pairs;
  std::filesystem::path lexicon;  // dictionary
  std::string base_url;           // remote
  RemoteOptions remote;
};

struct ListenAddress {
  std::string host;
  int port = 0;
};

struct ServiceConfig {
  std::filesystem::path corpus_dir;
  std::filesystem::path entity_map;
  std::filesystem::path draft_dir = "drafts";
  std::filesystem::path event_log = "events.ndjson";
  std::filesystem::path published_dir = "published";
  std::optional<std::filesystem::path> abbreviations_dir;
  std::string listen = "127.0.0.1:8080";
  double match_threshold = kDefaultMatchThreshold;
  ProvenanceConfig provenance;
  std::vector<ProviderDecl> providers;
};

/// "host:port", port 0 meaning any free port. Throws ConfigError.
ListenAddress parse_listen_address(const std::string& listen);

/// Unknown keys and wrong types are errors. Throws ConfigError.
ServiceConfig service_config_from_json(const nlohmann::json& j,
                                       const std::filesystem::path& base_dir = {});
ServiceConfig load_service_config(const std::filesystem::path& path);

/// Fails fast: the corpus, entity map, lexicons and abbreviation directory
/// must exist; provider declarations must be well formed and uniquely named.
/// State directories are created when missing. Throws ConfigError.
void validate_service_config(const ServiceConfig& cfg);

std::shared_ptr<const MtProvider> make_provider(const ProviderDecl& decl);

}  // namespace cx
