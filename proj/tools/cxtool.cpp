// cxtool - command line front end: run the service and inspect its inputs.

#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cx/adaptation.hpp"
#include "cx/doc_json.hpp"
#include "cx/markup_transfer.hpp"
#include "cx/service.hpp"
#include "cx/telemetry.hpp"

namespace {

std::string read_input(const std::string& path) {
  std::stringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw cx::Error("cannot read " + path);
    buf << in.rdbuf();
  }
  return buf.str();
}

int serve(const std::string& config_path, const std::string& listen, const std::string& corpus,
          const std::string& entity_map) {
  cx::ServiceConfig cfg;
  if (!config_path.empty()) cfg = cx::load_service_config(config_path);
  if (!listen.empty()) cfg.listen = listen;
  if (!corpus.empty()) cfg.corpus_dir = corpus;
  if (!entity_map.empty()) cfg.entity_map = entity_map;

  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  cx::CxService service(cx::build_service_parts(cfg));
  cx::HttpServer server(service);
  auto addr = cx::parse_listen_address(cfg.listen);
  int port = server.start(addr.host, addr.port);
  std::cerr << "listening on " << addr.host << ":" << port << "\n";

  int sig = 0;
  sigwait(&signals, &sig);
  std::cerr << "shutting down\n";
  server.stop();
  return 0;
}

int parse_cmd(const std::string& file, const std::string& lang, const std::string& title, bool as_json) {
  auto doc = cx::parse_document(read_input(file), lang, title);
  if (as_json) {
    std::cout << cx::page_payload(doc, cx::AbbreviationTable::defaults()).dump(2) << "\n";
  } else {
    std::cout << cx::serialize_document(doc) << "\n";
  }
  return 0;
}

int segment_cmd(const std::string& file, const std::string& lang) {
  auto doc = cx::parse_document(read_input(file), lang, {});
  for (const auto& b : doc.blocks) {
    if (b.kind == cx::BlockKind::opaque) continue;
    for (const auto& r : cx::segment_sentences(b.content, lang)) {
      std::u32string s = b.content.text.substr(r.start, r.end - r.start);
      std::cout << b.id << "\t" << r.start << "\t" << r.end << "\t" << cx::utf8::encode(s) << "\n";
    }
  }
  return 0;
}

int translate_cmd(const std::string& file, const std::string& kind_name, const std::string& lexicon,
                  const std::string& base_url, const std::string& from, const std::string& to,
                  const std::string& entity_map, double threshold) {
  auto kind = cx::provider_kind_from_name(kind_name);
  if (!kind) throw cx::Error("unknown provider kind '" + kind_name + "'");
  cx::ProviderDecl decl{"cli", *kind, {{from, to}}, lexicon, base_url, {}};
  auto provider = cx::make_provider(decl);
  auto doc = cx::parse_document(read_input(file), from, {});
  std::optional<cx::EntityMap> map;
  if (!entity_map.empty()) map = cx::EntityMap::load(entity_map);
  cx::LinkReport links;
  std::size_t dropped = 0;
  for (auto& b : doc.blocks) {
    if (b.kind == cx::BlockKind::opaque) continue;
    auto adapted = cx::adapt_rich(*provider, b.content, from, to, threshold);
    dropped += adapted.dropped.size();
    b.content = std::move(adapted.text);
    if (map) links += cx::adapt_links(b.content, *map, from, to);
  }
  doc.lang = to;
  if (map) doc.categories = cx::adapt_categories(doc.categories, *map, from, to).adapted;
  std::cout << cx::serialize_document(doc) << "\n";
  std::cerr << "dropped spans: " << dropped << "\n";
  if (map) {
    std::cerr << "links: " << links.adapted << " adapted, " << links.missing << " missing, "
              << links.unknown << " unknown, " << links.preflagged << " preflagged\n";
  }
  return 0;
}

int entity_map_validate(const std::string& path) {
  try {
    auto map = cx::EntityMap::load(path);
    std::cout << map.entity_count() << " entities, " << map.sitelink_count() << " sitelinks\n";
    return 0;
  } catch (const cx::EntityMapError& e) {
    std::cerr << path << ": " << e.what() << "\n";
    return 1;
  }
}

int stats_cmd(const std::string& log) {
  std::cout << cx::stats_to_json(cx::compute_stats(cx::read_events(log))).dump(2) << "\n";
  return 0;
}

int record_event_cmd(const std::string& log, const std::string& kind_name, const std::string& from,
                     const std::string& to, const std::string& title, const std::string& when) {
  auto kind = cx::event_kind_from_name(kind_name);
  if (!kind) throw cx::Error("unknown event kind '" + kind_name + "'");
  cx::EventLog events(log);
  if (when.empty()) {
    events.record(*kind, from, to, title);
  } else {
    auto t = cx::parse_timestamp(when);
    if (!t) throw cx::Error("bad timestamp '" + when + "'");
    events.append({*kind, from, to, title, *t});
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Computer-assisted translation engine"};
  app.require_subcommand(1);

  std::string config, listen, corpus, entity_map;
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP service");
  serve_cmd->add_option("--config", config, "Service configuration (JSON)")->check(CLI::ExistingFile);
  serve_cmd->add_option("--listen", listen, "host:port, overrides the config");
  serve_cmd->add_option("--corpus", corpus, "Corpus directory, overrides the config");
  serve_cmd->add_option("--entity-map", entity_map, "Entity map TSV, overrides the config");

  std::string file = "-", lang = "en", title, from, to, kind = "identity", lexicon, base_url, log;
  bool as_json = false;
  double threshold = cx::kDefaultMatchThreshold;

  auto* parse = app.add_subcommand("parse", "Parse an article and print its normalized form");
  parse->add_option("file", file, "HTML file, '-' for stdin");
  parse->add_option("--lang", lang);
  parse->add_option("--title", title);
  parse->add_flag("--json", as_json, "Print the page payload instead of HTML");

  auto* segment = app.add_subcommand("segment", "Print sentence ranges per block");
  segment->add_option("file", file, "HTML file, '-' for stdin");
  segment->add_option("--lang", lang);

  auto* translate = app.add_subcommand("translate", "Machine-translate an article with markup transfer");
  translate->add_option("file", file, "HTML file, '-' for stdin");
  translate->add_option("--provider-kind", kind, "identity, uppercase, reverse, dictionary or remote");
  translate->add_option("--lexicon", lexicon, "Lexicon TSV for the dictionary provider");
  translate->add_option("--base-url", base_url, "Base URL for the remote provider");
  translate->add_option("--from", from)->required();
  translate->add_option("--to", to)->required();
  translate->add_option("--entity-map", entity_map, "Adapt links and categories with this map");
  translate->add_option("--threshold", threshold, "Span match threshold")->check(CLI::Range(0.0, 1.0));

  auto* emap = app.add_subcommand("entity-map", "Entity map utilities");
  emap->require_subcommand(1);
  std::string emap_path;
  auto* validate = emap->add_subcommand("validate", "Check an entity map file");
  validate->add_option("path", emap_path)->required();

  auto* stats = app.add_subcommand("stats", "Print statistics of an event log");
  stats->add_option("log", log)->required();

  std::string event_kind, when;
  auto* record = app.add_subcommand("record-event", "Append an event to a log");
  record->add_option("--log", log)->required();
  record->add_option("--kind", event_kind, "draft_created, published or deleted")->required();
  record->add_option("--from", from)->required();
  record->add_option("--to", to)->required();
  record->add_option("--title", title)->required();
  record->add_option("--timestamp", when, "Defaults to now");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*serve_cmd) return serve(config, listen, corpus, entity_map);
    if (*parse) return parse_cmd(file, lang, title, as_json);
    if (*segment) return segment_cmd(file, lang);
    if (*translate) return translate_cmd(file, kind, lexicon, base_url, from, to, entity_map, threshold);
    if (*validate) return entity_map_validate(emap_path);
    if (*stats) return stats_cmd(log);
    if (*record) return record_event_cmd(log, event_kind, from, to, title, when);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
