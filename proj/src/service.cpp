#include "cx/service.hpp"

#include <httplib.h>

#include <fstream>
#include <sstream>

#include "cx/doc_json.hpp"
#include "cx/markup_transfer.hpp"

namespace cx {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

Response error(int status, const std::string& message) { return {status, json{{"error", message}}}; }

bool plain_segment(const std::string& s) {
  return !s.empty() && s.front() != '.' && s.find('/') == std::string::npos &&
         s.find('\\') == std::string::npos && s.find('\0') == std::string::npos;
}

}  // namespace

CorpusFetcher::CorpusFetcher(fs::path dir) : dir_(std::move(dir)) {}

fs::path CorpusFetcher::relative_path(const std::string& lang, const std::string& title) {
  std::string file = normalize_title(title);
  for (char& c : file) {
    if (c == ' ') c = '_';
  }
  return fs::path(lang) / (file + ".html");
}

std::optional<std::string> CorpusFetcher::fetch(const std::string& lang, const std::string& title) const {
  if (!plain_segment(lang) || !plain_segment(title)) return std::nullopt;
  auto path = dir_ / relative_path(lang, title);
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    if (!fs::exists(path)) return std::nullopt;
    throw FetchError("cannot read " + path.string());
  }
  std::stringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw FetchError("cannot read " + path.string());
  return buf.str();
}

ServiceParts build_service_parts(const ServiceConfig& cfg) {
  validate_service_config(cfg);
  ServiceParts parts;
  parts.fetcher = std::make_shared<CorpusFetcher>(cfg.corpus_dir);
  try {
    parts.entities = std::make_shared<EntityMap>(EntityMap::load(cfg.entity_map.string()));
  } catch (const EntityMapError& e) {
    throw ConfigError(std::string("entity map: ") + e.what());
  }
  parts.providers = std::make_shared<ProviderRegistry>();
  for (const auto& d : cfg.providers) {
    try {
      parts.providers->add(make_provider(d));
    } catch (const LexiconError& e) {
      throw ConfigError("provider '" + d.name + "': " + e.what());
    }
  }
  parts.drafts = std::make_shared<FileDraftStore>(cfg.draft_dir);
  parts.events = std::make_shared<EventLog>(cfg.event_log);
  if (cfg.abbreviations_dir) parts.abbreviations.load_directory(cfg.abbreviations_dir->string());
  parts.provenance = cfg.provenance;
  parts.match_threshold = cfg.match_threshold;
  parts.published_dir = cfg.published_dir;
  return parts;
}

json correspondence_to_json(const Correspondence& c) {
  json pairs = json::array();
  for (const auto& [s, t] : c.pairs) pairs.push_back(json::array({s, t}));
  return json{{"pairs", std::move(pairs)},
              {"unpairedSource", c.unpaired_source},
              {"unpairedTarget", c.unpaired_target}};
}

json link_report_to_json(const LinkReport& r) {
  return json{{"adapted", r.adapted},
              {"missing", r.missing},
              {"unknown", r.unknown},
              {"preflagged", r.preflagged}};
}

json block_to_json(const Block& b) {
  json j{{"id", b.id},
         {"kind", block_kind_name(b.kind)},
         {"html", serialize_block(b)},
         {"content", rich_text_to_json(b.content)}};
  if (b.kind == BlockKind::heading) j["level"] = b.level;
  if (b.kind == BlockKind::list_item) j["ordered"] = b.ordered;
  return j;
}

json draft_summary_to_json(const DraftSummary& s) {
  return json{{"id", s.id},
              {"sourceLang", s.source_lang},
              {"targetLang", s.target_lang},
              {"sourceTitle", s.source_title},
              {"targetTitle", s.target_title},
              {"revision", s.revision},
              {"updatedAt", format_timestamp(s.updated_at)}};
}

namespace {

json ranges_to_json(const std::vector<SentenceRange>& ranges) {
  json out = json::array();
  for (const auto& r : ranges) out.push_back({{"start", r.start}, {"end", r.end}});
  return out;
}

}  // namespace

json page_payload(const AnnotatedDoc& doc, const AbbreviationTable& abbreviations) {
  json blocks = json::array();
  for (const auto& b : doc.blocks) {
    json jb = block_to_json(b);
    jb["sentences"] = b.kind == BlockKind::opaque
                          ? json::array()
                          : ranges_to_json(segment_sentences(b.content, doc.lang, abbreviations));
    blocks.push_back(std::move(jb));
  }
  return json{{"lang", doc.lang},
              {"title", doc.title},
              {"blocks", std::move(blocks)},
              {"categories", doc.categories}};
}

CxService::CxService(ServiceParts parts) : parts_(std::move(parts)) {}

std::optional<AnnotatedDoc> CxService::load_source(const std::string& lang, const std::string& title) const {
  auto html = parts_.fetcher->fetch(lang, title);
  if (!html) return std::nullopt;
  try {
    return parse_document(*html, lang, normalize_title(title));
  } catch (const ParseError& e) {
    throw FetchError("source article " + lang + "/" + title + " is malformed: " + e.what());
  }
}

Response CxService::get_page(const std::string& lang, const std::string& title) const {
  try {
    auto doc = load_source(lang, title);
    if (!doc) return error(404, "no article '" + title + "' in " + lang);
    return {200, page_payload(*doc, parts_.abbreviations)};
  } catch (const FetchError& e) {
    return error(502, e.what());
  }
}

Response CxService::translate(const std::string& request_body) const {
  auto req = json::parse(request_body, nullptr, false);
  if (req.is_discarded() || !req.is_object()) return error(400, "request body must be a JSON object");
  for (const char* key : {"provider", "srcLang", "tgtLang", "blockHtml"}) {
    if (!req.contains(key) || !req[key].is_string()) {
      return error(400, std::string("missing string field '") + key + "'");
    }
  }
  double threshold = parts_.match_threshold;
  if (req.contains("threshold")) {
    if (!req["threshold"].is_number()) return error(400, "threshold must be a number");
    threshold = req["threshold"].get<double>();
    if (!(threshold >= 0.0 && threshold <= 1.0)) return error(400, "threshold must be in [0, 1]");
  }
  auto name = req["provider"].get<std::string>();
  auto src = req["srcLang"].get<std::string>();
  auto tgt = req["tgtLang"].get<std::string>();
  auto provider = parts_.providers->find(name);
  if (!provider) return error(400, "unknown provider '" + name + "'");
  if (!provider->supports(src, tgt)) {
    return error(400, "provider '" + name + "' does not support " + src + "-" + tgt);
  }

  AnnotatedDoc parsed;
  try {
    parsed = parse_document(req["blockHtml"].get<std::string>(), src, {});
  } catch (const ParseError& e) {
    return error(400, std::string("malformed block: ") + e.what());
  }
  if (parsed.blocks.size() != 1 || !parsed.categories.empty()) {
    return error(400, "blockHtml must contain exactly one block");
  }
  const Block& source = parsed.blocks.front();
  if (source.kind == BlockKind::opaque) return error(400, "block is not translatable");

  AdaptResult adapted;
  try {
    adapted = adapt_rich(*provider, source.content, src, tgt, threshold, parts_.abbreviations);
  } catch (const RemoteTransportError& e) {
    return error(502, e.what());
  } catch (const RemoteResponseError& e) {
    return error(502, e.what());
  }
  Block out = source;
  out.content = std::move(adapted.text);
  auto links = adapt_links(out.content, *parts_.entities, src, tgt);

  json dropped = json::array();
  for (const auto& s : adapted.dropped) dropped.push_back(span_to_json(s));
  return {200, json{{"provider", name},
                    {"srcLang", src},
                    {"tgtLang", tgt},
                    {"html", serialize_block(out)},
                    {"block", block_to_json(out)},
                    {"sourceSentences", ranges_to_json(adapted.source_sentences)},
                    {"targetSentences", ranges_to_json(adapted.target_sentences)},
                    {"correspondence", correspondence_to_json(adapted.correspondence)},
                    {"dropped", adapted.dropped.size()},
                    {"droppedSpans", std::move(dropped)},
                    {"links", link_report_to_json(links)}}};
}

Response CxService::get_draft(const std::string& id) const {
  try {
    return {200, draft_to_json(parts_.drafts->load(id))};
  } catch (const DraftNotFoundError& e) {
    return error(404, e.what());
  } catch (const CorruptDraftError& e) {
    return error(500, e.what());
  }
}

Response CxService::put_draft(const std::string& id, const std::string& request_body) {
  auto req = json::parse(request_body, nullptr, false);
  if (req.is_discarded() || !req.is_object()) return error(400, "request body must be a JSON object");
  if (!req.contains("expectedRevision") || !req["expectedRevision"].is_number_integer() ||
      req["expectedRevision"].get<long long>() < 0) {
    return error(422, "expectedRevision must be a non-negative integer");
  }
  if (!req.contains("draft") || !req["draft"].is_object()) return error(422, "missing draft object");
  long long expected = req["expectedRevision"].get<long long>();

  // Server-managed fields may be omitted by clients.
  json body = req["draft"];
  auto now = format_timestamp(now_ms());
  if (!body.contains("schemaVersion")) body["schemaVersion"] = kDraftSchemaVersion;
  if (!body.contains("id")) body["id"] = id;
  if (!body.contains("revision")) body["revision"] = expected;
  if (!body.contains("createdAt")) body["createdAt"] = now;
  if (!body.contains("updatedAt")) body["updatedAt"] = now;
  if (!body.contains("categories")) body["categories"] = json::array();
  if (body.contains("units") && body["units"].is_array()) {
    for (auto& u : body["units"]) {
      if (u.is_object() && !u.contains("updatedAt")) u["updatedAt"] = now;
    }
  }

  Draft draft;
  try {
    draft = draft_from_json(body);
  } catch (const InvalidDraftError& e) {
    return error(422, e.what());
  }
  if (draft.id != id) return error(422, "draft id does not match the URL");

  try {
    auto source = load_source(draft.source_lang, draft.source_title);
    if (!source) {
      return error(422, "source article " + draft.source_lang + "/" + draft.source_title + " not found");
    }
    std::vector<std::string> ids;
    for (const auto& b : source->blocks) ids.push_back(b.id);
    validate_units_against(draft, ids);
    long long revision = parts_.drafts->save(draft, expected);
    if (revision == 1) {
      parts_.events->record(EventKind::draft_created, draft.source_lang, draft.target_lang,
                            draft.source_title);
    }
    return {200, draft_to_json(parts_.drafts->load(id))};
  } catch (const FetchError& e) {
    return error(502, e.what());
  } catch (const InvalidDraftError& e) {
    return error(422, e.what());
  } catch (const RevisionConflictError& e) {
    Response r = error(409, e.what());
    r.body["storedRevision"] = e.stored();
    return r;
  } catch (const CorruptDraftError& e) {
    return error(500, e.what());
  } catch (const StorageError& e) {
    return error(500, e.what());
  }
}

Response CxService::list_drafts(const std::optional<std::string>& from,
                                const std::optional<std::string>& to) const {
  std::optional<LangPair> pair;
  if (from && to) pair = LangPair{*from, *to};
  json out = json::array();
  for (const auto& s : parts_.drafts->list(pair)) {
    if (from && s.source_lang != *from) continue;
    if (to && s.target_lang != *to) continue;
    out.push_back(draft_summary_to_json(s));
  }
  return {200, json{{"drafts", std::move(out)}}};
}

Response CxService::publish(const std::string& id) {
  Draft draft;
  try {
    draft = parts_.drafts->load(id);
  } catch (const DraftNotFoundError& e) {
    return error(404, e.what());
  } catch (const CorruptDraftError& e) {
    return error(500, e.what());
  }
  if (draft.units.empty()) return error(422, "draft has no translation units");
  if (draft.target_title.empty()) return error(422, "draft has no target title");

  std::optional<AnnotatedDoc> source;
  try {
    source = load_source(draft.source_lang, draft.source_title);
  } catch (const FetchError& e) {
    return error(502, e.what());
  }
  if (!source) return error(422, "source article no longer exists");

  auto report = evaluate_draft(draft, parts_.provenance);

  AnnotatedDoc out;
  out.lang = draft.target_lang;
  out.title = draft.target_title;
  for (const auto& b : source->blocks) {
    const auto* unit = draft.find_unit(b.id);
    if (!unit) continue;
    Block tb = b;
    tb.content = unit->current;
    out.blocks.push_back(std::move(tb));
  }
  auto cats = adapt_categories(source->categories, *parts_.entities, draft.source_lang, draft.target_lang);
  out.categories = cats.adapted;
  for (const auto& c : draft.categories) {
    if (std::find(out.categories.begin(), out.categories.end(), c) == out.categories.end()) {
      out.categories.push_back(c);
    }
  }
  std::string html = serialize_document(out);

  auto rel = CorpusFetcher::relative_path(draft.target_lang, draft.target_title);
  auto path = parts_.published_dir / rel;
  try {
    fs::create_directories(path.parent_path());
    auto temp = path;
    temp += ".tmp";
    {
      std::ofstream f(temp, std::ios::binary | std::ios::trunc);
      f << html;
      if (!f.flush()) throw StorageError("cannot write " + temp.string());
    }
    fs::rename(temp, path);
  } catch (const std::exception& e) {
    return error(500, std::string("publishing failed: ") + e.what());
  }
  parts_.events->record(EventKind::published, draft.source_lang, draft.target_lang, draft.target_title);

  return {200, json{{"id", draft.id},
                    {"lang", out.lang},
                    {"title", out.title},
                    {"path", rel.generic_string()},
                    {"html", html},
                    {"categories", out.categories},
                    {"droppedCategories", cats.dropped},
                    {"provenance", provenance_report_to_json(report)}}};
}

Response CxService::list_providers(const std::optional<std::string>& from,
                                   const std::optional<std::string>& to) const {
  json out = json::array();
  for (const auto& p : parts_.providers->all()) {
    bool match = std::any_of(p->pairs().begin(), p->pairs().end(), [&](const LangPair& lp) {
      return (!from || lp.first == *from) && (!to || lp.second == *to);
    });
    if (!match) continue;
    json pairs = json::array();
    for (const auto& lp : p->pairs()) pairs.push_back(json::array({lp.first, lp.second}));
    out.push_back({{"name", p->name()}, {"kind", provider_kind_name(p->kind())}, {"pairs", std::move(pairs)}});
  }
  return {200, json{{"providers", std::move(out)}}};
}

Response CxService::stats() const {
  try {
    return {200, stats_to_json(compute_stats(parts_.events->events()))};
  } catch (const EventLogError& e) {
    return error(500, e.what());
  }
}

namespace {

void reply(httplib::Response& res, const Response& r) {
  res.status = r.status;
  res.set_content(r.body.dump(), "application/json; charset=utf-8");
}

std::optional<std::string> query(const httplib::Request& req, const char* name) {
  if (!req.has_param(name)) return std::nullopt;
  return req.get_param_value(name);
}

}  // namespace

void CxService::mount(httplib::Server& server) {
  server.Get(R"(/api/v1/page/([^/]+)/(.+))", [this](const httplib::Request& req, httplib::Response& res) {
    reply(res, get_page(req.matches[1], req.matches[2]));
  });
  server.Post("/api/v1/translate", [this](const httplib::Request& req, httplib::Response& res) {
    reply(res, translate(req.body));
  });
  server.Get(R"(/api/v1/draft/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
    reply(res, get_draft(req.matches[1]));
  });
  server.Put(R"(/api/v1/draft/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
    reply(res, put_draft(req.matches[1], req.body));
  });
  server.Get("/api/v1/drafts", [this](const httplib::Request& req, httplib::Response& res) {
    reply(res, list_drafts(query(req, "from"), query(req, "to")));
  });
  server.Post(R"(/api/v1/publish/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
    reply(res, publish(req.matches[1]));
  });
  server.Get("/api/v1/providers", [this](const httplib::Request& req, httplib::Response& res) {
    reply(res, list_providers(query(req, "from"), query(req, "to")));
  });
  server.Get("/api/v1/stats", [this](const httplib::Request&, httplib::Response& res) {
    reply(res, stats());
  });
  server.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
    std::string what = "internal error";
    try {
      std::rethrow_exception(ep);
    } catch (const std::exception& e) {
      what = e.what();
    } catch (...) {
    }
    reply(res, error(500, what));
  });
}

HttpServer::HttpServer(CxService& service) : server_(std::make_unique<httplib::Server>()) {
  // Idle keep-alive connections hold a worker each; size the pool well
  // above the expected number of concurrent editors.
  server_->new_task_queue = [] { return new httplib::ThreadPool(kHttpWorkerThreads); };
  service.mount(*server_);
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::start(const std::string& host, int port) {
  if (port == 0) {
    port_ = server_->bind_to_any_port(host);
    if (port_ < 0) throw Error("cannot bind " + host);
  } else {
    if (!server_->bind_to_port(host, port)) {
      throw Error("cannot bind " + host + ":" + std::to_string(port));
    }
    port_ = port;
  }
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return port_;
}

void HttpServer::stop() {
  if (server_) server_->stop();
  if (thread_.joinable()) thread_.join();
}

void HttpServer::wait() {
  if (thread_.joinable()) thread_.join();
}

}  // namespace cx
