// provider.hpp - Plain-text machine translation providers and the registry
// the service picks them from.
//
// Providers only ever see plain text; markup is handled by adapt_rich().
// All kinds except `remote` are deterministic pure functions and exist so
// the markup-transfer algorithm can be tested without a real MT system.

#pragma once

#include <chrono>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cx/text.hpp"

namespace cx {

using LangPair = std::pair<std::string, std::string>;

enum class ProviderKind { identity, uppercase, dictionary, reverse, remote };

std::string_view provider_kind_name(ProviderKind kind);
std::optional<ProviderKind> provider_kind_from_name(std::string_view name);

class UnsupportedPairError : public Error {
 public:
  UnsupportedPairError(const std::string& provider, const std::string& src, const std::string& tgt);
};

class DuplicateProviderError : public Error {
 public:
  explicit DuplicateProviderError(const std::string& name);
};

/// Network-level failure talking to a remote MT service. Safe to retry.
class RemoteTransportError : public Error {
 public:
  using Error::Error;
};

/// The remote service answered, but not with a usable translation.
class RemoteResponseError : public Error {
 public:
  using Error::Error;
};

class MtProvider {
 public:
  MtProvider(std::string name, std::vector<LangPair> pairs);
  virtual ~MtProvider() = default;

  const std::string& name() const { return name_; }
  const std::vector<LangPair>& pairs() const { return pairs_; }
  bool supports(std::string_view src, std::string_view tgt) const;
  virtual ProviderKind kind() const = 0;

  /// Throws UnsupportedPairError when (src, tgt) is not declared.
  std::string translate(std::string_view text, std::string_view src, std::string_view tgt) const;

 protected:
  virtual std::string do_translate(std::string_view text, std::string_view src,
                                   std::string_view tgt) const = 0;

 private:
  std::string name_;
  std::vector<LangPair> pairs_;
};

std::string translate_plain(const MtProvider& provider, std::string_view text,
                            std::string_view src, std::string_view tgt);

class IdentityProvider final : public MtProvider {
 public:
  using MtProvider::MtProvider;
  ProviderKind kind() const override { return ProviderKind::identity; }

 protected:
  std::string do_translate(std::string_view text, std::string_view, std::string_view) const override;
};

class UppercaseProvider final : public MtProvider {
 public:
  using MtProvider::MtProvider;
  ProviderKind kind() const override { return ProviderKind::uppercase; }

 protected:
  std::string do_translate(std::string_view text, std::string_view, std::string_view) const override;
};

/// Reverses the token order and joins tokens with single spaces.
class ReverseProvider final : public MtProvider {
 public:
  using MtProvider::MtProvider;
  ProviderKind kind() const override { return ProviderKind::reverse; }

 protected:
  std::string do_translate(std::string_view text, std::string_view, std::string_view) const override;
};

class LexiconError : public Error {
 public:
  LexiconError(const std::string& what, std::size_t line);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Token-to-token lexicon. Keys are stored case-folded.
class Lexicon {
 public:
  /// TSV: source-token TAB target-token, '#' comments, blank lines ignored.
  static Lexicon parse(std::string_view contents);
  static Lexicon load(const std::string& path);

  void add(std::string_view source, std::string_view target);
  std::optional<std::string> lookup(std::string_view source) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::map<std::string, std::string, std::less<>> entries_;
};

/// Word-by-word substitution. Lookup is case-insensitive; a source token
/// starting with an uppercase letter gets its replacement's first letter
/// uppercased. Unknown tokens and all whitespace pass through unchanged.
class DictionaryProvider final : public MtProvider {
 public:
  DictionaryProvider(std::string name, std::vector<LangPair> pairs, Lexicon lexicon,
                     std::string lexicon_path = {});
  ProviderKind kind() const override { return ProviderKind::dictionary; }
  const std::string& lexicon_path() const { return lexicon_path_; }

 protected:
  std::string do_translate(std::string_view text, std::string_view, std::string_view) const override;

 private:
  Lexicon lexicon_;
  std::string lexicon_path_;
};

struct RemoteOptions {
  std::size_t max_in_flight = 4;  // per host, shared by all providers on it
  std::chrono::milliseconds timeout{10000};
  std::size_t retries = 0;  // extra attempts after a transport failure
};

/// Client for an Apertium-compatible HTTP API:
///   GET <base>/translate?langpair=<src>|<tgt>&q=<text>
///   -> {"responseData": {"translatedText": "..."}, "responseStatus": 200}
class RemoteProvider final : public MtProvider {
 public:
  RemoteProvider(std::string name, std::vector<LangPair> pairs, std::string base_url,
                 RemoteOptions options = {});
  ProviderKind kind() const override { return ProviderKind::remote; }
  const std::string& base_url() const { return base_url_; }
  const RemoteOptions& options() const { return options_; }

 protected:
  std::string do_translate(std::string_view text, std::string_view src,
                           std::string_view tgt) const override;

 private:
  std::string request_once(std::string_view text, std::string_view src, std::string_view tgt) const;

  std::string base_url_;
  std::string origin_;  // scheme://host[:port]
  std::string path_prefix_;
  RemoteOptions options_;
};

class ProviderRegistry {
 public:
  /// Throws DuplicateProviderError if the name is taken.
  void add(std::shared_ptr<const MtProvider> provider);

  /// Providers declaring (src, tgt), in registration order.
  std::vector<std::shared_ptr<const MtProvider>> providers_for_pair(std::string_view src,
                                                                    std::string_view tgt) const;
  std::shared_ptr<const MtProvider> find(std::string_view name) const;
  std::vector<std::shared_ptr<const MtProvider>> all() const;

 private:
  mutable std::mutex mu_;
  std::vector<std::shared_ptr<const MtProvider>> providers_;
};

}  // namespace cx
