#include "cx/service_config.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace cx {

using nlohmann::json;
namespace fs = std::filesystem;

ListenAddress parse_listen_address(const std::string& listen) {
  auto colon = listen.rfind(':');
  if (colon == std::string::npos || colon == 0) {
    throw ConfigError("listen address must be host:port, got '" + listen + "'");
  }
  ListenAddress out;
  out.host = listen.substr(0, colon);
  auto digits = std::string_view(listen).substr(colon + 1);
  auto r = std::from_chars(digits.data(), digits.data() + digits.size(), out.port);
  if (digits.empty() || r.ec != std::errc{} || r.ptr != digits.data() + digits.size() ||
      out.port < 0 || out.port > 65535) {
    throw ConfigError("invalid port in listen address '" + listen + "'");
  }
  return out;
}

namespace {

void check_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

std::string get_string(const json& j, const char* key, const std::string& where) {
  const auto& v = j.at(key);
  if (!v.is_string()) throw ConfigError(where + "." + key + " must be a string");
  return v.get<std::string>();
}

double get_number(const json& j, const char* key, const std::string& where) {
  const auto& v = j.at(key);
  if (!v.is_number()) throw ConfigError(where + "." + key + " must be a number");
  return v.get<double>();
}

long long get_integer(const json& j, const char* key, const std::string& where) {
  const auto& v = j.at(key);
  if (!v.is_number_integer()) throw ConfigError(where + "." + key + " must be an integer");
  return v.get<long long>();
}

fs::path resolve(const fs::path& base, const std::string& p) {
  fs::path path(p);
  if (path.is_relative() && !base.empty()) return base / path;
  return path;
}

ProviderDecl provider_from_json(const json& j, std::size_t index, const fs::path& base) {
  std::string where = "providers[" + std::to_string(index) + "]";
  check_keys(j, where,
             {"name", "kind", "pairs", "lexicon", "baseUrl", "maxInFlight", "timeoutMs", "retries"});
  for (const char* required : {"name", "kind", "pairs"}) {
    if (!j.contains(required)) throw ConfigError(where + ": missing '" + required + "'");
  }
  ProviderDecl d;
  d.name = get_string(j, "name", where);
  auto kind = provider_kind_from_name(get_string(j, "kind", where));
  if (!kind) throw ConfigError(where + ": unknown kind '" + j.at("kind").get<std::string>() + "'");
  d.kind = *kind;
  const auto& pairs = j.at("pairs");
  if (!pairs.is_array()) throw ConfigError(where + ".pairs must be an array");
  for (const auto& p : pairs) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string()) {
      throw ConfigError(where + ".pairs entries must be [source, target]");
    }
    d.pairs.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
  }
  if (j.contains("lexicon")) d.lexicon = resolve(base, get_string(j, "lexicon", where));
  if (j.contains("baseUrl")) d.base_url = get_string(j, "baseUrl", where);
  if (j.contains("maxInFlight")) {
    auto v = get_integer(j, "maxInFlight", where);
    if (v < 1) throw ConfigError(where + ".maxInFlight must be >= 1");
    d.remote.max_in_flight = static_cast<std::size_t>(v);
  }
  if (j.contains("timeoutMs")) {
    auto v = get_integer(j, "timeoutMs", where);
    if (v < 1) throw ConfigError(where + ".timeoutMs must be >= 1");
    d.remote.timeout = std::chrono::milliseconds(v);
  }
  if (j.contains("retries")) {
    auto v = get_integer(j, "retries", where);
    if (v < 0) throw ConfigError(where + ".retries must be >= 0");
    d.remote.retries = static_cast<std::size_t>(v);
  }
  return d;
}

}  // namespace

ServiceConfig service_config_from_json(const json& j, const fs::path& base) {
  check_keys(j, "config",
             {"corpusDir", "entityMap", "draftDir", "eventLog", "publishedDir", "abbreviationsDir",
              "listen", "matchThreshold", "provenance", "providers"});
  ServiceConfig cfg;
  if (j.contains("corpusDir")) cfg.corpus_dir = resolve(base, get_string(j, "corpusDir", "config"));
  if (j.contains("entityMap")) cfg.entity_map = resolve(base, get_string(j, "entityMap", "config"));
  cfg.draft_dir = resolve(base, j.contains("draftDir") ? get_string(j, "draftDir", "config")
                                                       : cfg.draft_dir.string());
  cfg.event_log = resolve(base, j.contains("eventLog") ? get_string(j, "eventLog", "config")
                                                       : cfg.event_log.string());
  cfg.published_dir = resolve(base, j.contains("publishedDir")
                                        ? get_string(j, "publishedDir", "config")
                                        : cfg.published_dir.string());
  if (j.contains("abbreviationsDir")) {
    cfg.abbreviations_dir = resolve(base, get_string(j, "abbreviationsDir", "config"));
  }
  if (j.contains("listen")) cfg.listen = get_string(j, "listen", "config");
  if (j.contains("matchThreshold")) cfg.match_threshold = get_number(j, "matchThreshold", "config");
  if (j.contains("provenance")) {
    const auto& p = j.at("provenance");
    check_keys(p, "provenance", {"unitThreshold", "overallThreshold", "minUnitTokens"});
    if (p.contains("unitThreshold")) {
      cfg.provenance.unit_threshold = get_number(p, "unitThreshold", "provenance");
    }
    if (p.contains("overallThreshold")) {
      cfg.provenance.overall_threshold = get_number(p, "overallThreshold", "provenance");
    }
    if (p.contains("minUnitTokens")) {
      cfg.provenance.min_unit_tokens = get_integer(p, "minUnitTokens", "provenance");
    }
  }
  if (j.contains("providers")) {
    const auto& ps = j.at("providers");
    if (!ps.is_array()) throw ConfigError("config.providers must be an array");
    for (std::size_t i = 0; i < ps.size(); ++i) cfg.providers.push_back(provider_from_json(ps[i], i, base));
  }
  return cfg;
}

ServiceConfig load_service_config(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  auto j = json::parse(buf.str(), nullptr, false);
  if (j.is_discarded()) throw ConfigError("config " + path.string() + " is not valid JSON");
  return service_config_from_json(j, path.parent_path());
}

void validate_service_config(const ServiceConfig& cfg) {
  if (cfg.corpus_dir.empty() || !fs::is_directory(cfg.corpus_dir)) {
    throw ConfigError("corpus directory not found: '" + cfg.corpus_dir.string() + "'");
  }
  if (cfg.entity_map.empty() || !fs::is_regular_file(cfg.entity_map)) {
    throw ConfigError("entity map not found: '" + cfg.entity_map.string() + "'");
  }
  if (cfg.abbreviations_dir && !fs::is_directory(*cfg.abbreviations_dir)) {
    throw ConfigError("abbreviations directory not found: '" + cfg.abbreviations_dir->string() + "'");
  }
  parse_listen_address(cfg.listen);
  if (!(cfg.match_threshold >= 0.0 && cfg.match_threshold <= 1.0)) {
    throw ConfigError("matchThreshold must be in [0, 1]");
  }
  try {
    cfg.provenance.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("provenance: ") + e.what());
  }
  std::set<std::string> names;
  for (const auto& d : cfg.providers) {
    if (d.name.empty()) throw ConfigError("provider without a name");
    if (!names.insert(d.name).second) throw ConfigError("duplicate provider '" + d.name + "'");
    if (d.pairs.empty()) throw ConfigError("provider '" + d.name + "' declares no pairs");
    if (d.kind == ProviderKind::dictionary && !fs::is_regular_file(d.lexicon)) {
      throw ConfigError("provider '" + d.name + "': lexicon not found: '" + d.lexicon.string() + "'");
    }
    if (d.kind == ProviderKind::remote && d.base_url.empty()) {
      throw ConfigError("provider '" + d.name + "': remote provider needs baseUrl");
    }
  }
  for (const auto& dir : {cfg.draft_dir, cfg.published_dir, cfg.event_log.parent_path()}) {
    if (dir.empty()) continue;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (!fs::is_directory(dir)) throw ConfigError("cannot create directory '" + dir.string() + "'");
  }
}

std::shared_ptr<const MtProvider> make_provider(const ProviderDecl& d) {
  switch (d.kind) {
    case ProviderKind::identity: return std::make_shared<IdentityProvider>(d.name, d.pairs);
    case ProviderKind::uppercase: return std::make_shared<UppercaseProvider>(d.name, d.pairs);
    case ProviderKind::reverse: return std::make_shared<ReverseProvider>(d.name, d.pairs);
    case ProviderKind::dictionary:
      return std::make_shared<DictionaryProvider>(d.name, d.pairs, Lexicon::load(d.lexicon.string()),
                                                  d.lexicon.string());
    case ProviderKind::remote:
      return std::make_shared<RemoteProvider>(d.name, d.pairs, d.base_url, d.remote);
  }
  throw ConfigError("unknown provider kind");
}

}  // namespace cx
