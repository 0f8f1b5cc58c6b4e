#include "cx/provider.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "cx/tokenize.hpp"

namespace cx {

std::string_view provider_kind_name(ProviderKind kind) {
  switch (kind) {
    case ProviderKind::identity: return "identity";
    case ProviderKind::uppercase: return "uppercase";
    case ProviderKind::dictionary: return "dictionary";
    case ProviderKind::reverse: return "reverse";
    case ProviderKind::remote: return "remote";
  }
  return "identity";
}

std::optional<ProviderKind> provider_kind_from_name(std::string_view name) {
  for (auto k : {ProviderKind::identity, ProviderKind::uppercase, ProviderKind::dictionary,
                 ProviderKind::reverse, ProviderKind::remote}) {
    if (provider_kind_name(k) == name) return k;
  }
  return std::nullopt;
}

UnsupportedPairError::UnsupportedPairError(const std::string& provider, const std::string& src,
                                           const std::string& tgt)
    : Error("provider '" + provider + "' does not support " + src + "->" + tgt) {}

DuplicateProviderError::DuplicateProviderError(const std::string& name)
    : Error("provider '" + name + "' is already registered") {}

MtProvider::MtProvider(std::string name, std::vector<LangPair> pairs)
    : name_(std::move(name)), pairs_(std::move(pairs)) {}

bool MtProvider::supports(std::string_view src, std::string_view tgt) const {
  return std::any_of(pairs_.begin(), pairs_.end(),
                     [&](const LangPair& p) { return p.first == src && p.second == tgt; });
}

std::string MtProvider::translate(std::string_view text, std::string_view src,
                                  std::string_view tgt) const {
  if (!supports(src, tgt)) throw UnsupportedPairError(name_, std::string(src), std::string(tgt));
  return do_translate(text, src, tgt);
}

std::string translate_plain(const MtProvider& provider, std::string_view text,
                            std::string_view src, std::string_view tgt) {
  return provider.translate(text, src, tgt);
}

std::string IdentityProvider::do_translate(std::string_view text, std::string_view,
                                           std::string_view) const {
  return std::string(text);
}

std::string UppercaseProvider::do_translate(std::string_view text, std::string_view,
                                            std::string_view) const {
  auto cps = utf8::decode(text);
  for (auto& c : cps) c = to_upper(c);
  return utf8::encode(cps);
}

std::string ReverseProvider::do_translate(std::string_view text, std::string_view,
                                          std::string_view) const {
  auto tokens = tokenize(text);
  std::string out;
  for (auto it = tokens.rbegin(); it != tokens.rend(); ++it) {
    if (!out.empty()) out.push_back(' ');
    out += it->text;
  }
  return out;
}

LexiconError::LexiconError(const std::string& what, std::size_t line)
    : Error("lexicon line " + std::to_string(line) + ": " + what), line_(line) {}

Lexicon Lexicon::parse(std::string_view contents) {
  Lexicon lex;
  std::istringstream in{std::string(contents)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
      throw LexiconError("expected two tab-separated columns", lineno);
    }
    if (tab == 0 || tab + 1 == line.size()) throw LexiconError("empty column", lineno);
    try {
      lex.add(std::string_view(line).substr(0, tab), std::string_view(line).substr(tab + 1));
    } catch (const Utf8Error& e) {
      throw LexiconError(e.what(), lineno);
    }
  }
  return lex;
}

Lexicon Lexicon::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open lexicon " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

void Lexicon::add(std::string_view source, std::string_view target) {
  entries_.insert_or_assign(fold_case(source), std::string(target));
}

std::optional<std::string> Lexicon::lookup(std::string_view source) const {
  auto it = entries_.find(fold_case(source));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

DictionaryProvider::DictionaryProvider(std::string name, std::vector<LangPair> pairs,
                                       Lexicon lexicon, std::string lexicon_path)
    : MtProvider(std::move(name), std::move(pairs)),
      lexicon_(std::move(lexicon)),
      lexicon_path_(std::move(lexicon_path)) {}

std::string DictionaryProvider::do_translate(std::string_view text, std::string_view,
                                             std::string_view) const {
  auto cps = utf8::decode(text);
  auto tokens = tokenize(std::u32string_view(cps));
  std::string out;
  std::size_t pos = 0;
  for (const auto& t : tokens) {
    out += utf8::encode(std::u32string_view(cps).substr(pos, t.start - pos));
    auto replacement = lexicon_.lookup(t.text);
    if (!replacement) {
      out += t.text;
    } else if (is_upper(cps[t.start])) {
      out += utf8::encode(upper_first(utf8::decode(*replacement)));
    } else {
      out += *replacement;
    }
    pos = t.end;
  }
  out += utf8::encode(std::u32string_view(cps).substr(pos));
  return out;
}

void ProviderRegistry::add(std::shared_ptr<const MtProvider> provider) {
  std::lock_guard lock(mu_);
  for (const auto& p : providers_) {
    if (p->name() == provider->name()) throw DuplicateProviderError(provider->name());
  }
  providers_.push_back(std::move(provider));
}

std::vector<std::shared_ptr<const MtProvider>> ProviderRegistry::providers_for_pair(
    std::string_view src, std::string_view tgt) const {
  std::lock_guard lock(mu_);
  std::vector<std::shared_ptr<const MtProvider>> out;
  for (const auto& p : providers_) {
    if (p->supports(src, tgt)) out.push_back(p);
  }
  return out;
}

std::shared_ptr<const MtProvider> ProviderRegistry::find(std::string_view name) const {
  std::lock_guard lock(mu_);
  for (const auto& p : providers_) {
    if (p->name() == name) return p;
  }
  return nullptr;
}

std::vector<std::shared_ptr<const MtProvider>> ProviderRegistry::all() const {
  std::lock_guard lock(mu_);
  return providers_;
}

}  // namespace cx
