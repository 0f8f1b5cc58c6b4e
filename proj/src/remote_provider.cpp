#include <condition_variable>
#include <httplib.h>
#include <json.hpp>

#include "cx/provider.hpp"

namespace cx {

namespace {

// Caps concurrent requests to one host across every provider pointing at it.
class HostThrottle {
 public:
  explicit HostThrottle(std::size_t capacity) : capacity_(std::max<std::size_t>(1, capacity)) {}

  void acquire() {
    std::unique_lock lock(mu_);
    cv_.wait(lock, [&] { return in_flight_ < capacity_; });
    ++in_flight_;
  }

  void release() {
    {
      std::lock_guard lock(mu_);
      --in_flight_;
    }
    cv_.notify_one();
  }

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  std::size_t capacity_;
  std::size_t in_flight_ = 0;
};

// The first provider registered for a host decides its capacity.
std::shared_ptr<HostThrottle> throttle_for(const std::string& origin, std::size_t capacity) {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<HostThrottle>> throttles;
  std::lock_guard lock(mu);
  auto& slot = throttles[origin];
  if (!slot) slot = std::make_shared<HostThrottle>(capacity);
  return slot;
}

std::string url_encode(std::string_view s) {
  static constexpr char hex[] = "0123456789ABCDEF";
  std::string out;
  for (char ch : s) {
    auto c = static_cast<unsigned char>(ch);
    if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
      out.push_back(ch);
    } else {
      out.push_back('%');
      out.push_back(hex[c >> 4]);
      out.push_back(hex[c & 0xF]);
    }
  }
  return out;
}

}  // namespace

RemoteProvider::RemoteProvider(std::string name, std::vector<LangPair> pairs, std::string base_url,
                               RemoteOptions options)
    : MtProvider(std::move(name), std::move(pairs)),
      base_url_(std::move(base_url)),
      options_(options) {
  auto scheme = base_url_.find("://");
  if (scheme == std::string::npos) throw Error("remote provider base URL lacks a scheme: " + base_url_);
  auto slash = base_url_.find('/', scheme + 3);
  origin_ = base_url_.substr(0, slash);
  path_prefix_ = slash == std::string::npos ? "" : base_url_.substr(slash);
  while (!path_prefix_.empty() && path_prefix_.back() == '/') path_prefix_.pop_back();
}

std::string RemoteProvider::do_translate(std::string_view text, std::string_view src,
                                         std::string_view tgt) const {
  for (std::size_t attempt = 0;; ++attempt) {
    try {
      return request_once(text, src, tgt);
    } catch (const RemoteTransportError&) {
      if (attempt >= options_.retries) throw;
    }
  }
}

std::string RemoteProvider::request_once(std::string_view text, std::string_view src,
                                         std::string_view tgt) const {
  auto throttle = throttle_for(origin_, options_.max_in_flight);
  throttle->acquire();
  struct Release {
    HostThrottle* t;
    ~Release() { t->release(); }
  } release{throttle.get()};

  httplib::Client client(origin_);
  auto secs = std::chrono::duration_cast<std::chrono::seconds>(options_.timeout);
  auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(options_.timeout - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_write_timeout(secs.count(), usecs.count());

  std::string path = path_prefix_ + "/translate?langpair=" + url_encode(src) + "|" +
                     url_encode(tgt) + "&q=" + url_encode(text);
  auto res = client.Get(path);
  if (!res) {
    throw RemoteTransportError("remote MT " + base_url_ + ": " + httplib::to_string(res.error()));
  }
  if (res->status >= 500) {
    throw RemoteTransportError("remote MT " + base_url_ + ": HTTP " + std::to_string(res->status));
  }
  if (res->status != 200) {
    throw RemoteResponseError("remote MT " + base_url_ + ": HTTP " + std::to_string(res->status));
  }
  auto body = nlohmann::json::parse(res->body, nullptr, false);
  if (body.is_discarded() || !body.is_object()) {
    throw RemoteResponseError("remote MT " + base_url_ + ": response is not a JSON object");
  }
  auto status = body.find("responseStatus");
  if (status == body.end() || !status->is_number_integer() || status->get<int>() != 200) {
    std::string details;
    if (auto d = body.find("responseDetails"); d != body.end() && d->is_string()) {
      details = ": " + d->get<std::string>();
    }
    throw RemoteResponseError("remote MT " + base_url_ + ": bad responseStatus" + details);
  }
  auto data = body.find("responseData");
  if (data == body.end() || !data->is_object()) {
    throw RemoteResponseError("remote MT " + base_url_ + ": missing responseData");
  }
  auto translated = data->find("translatedText");
  if (translated == data->end() || !translated->is_string()) {
    throw RemoteResponseError("remote MT " + base_url_ + ": missing translatedText");
  }
  return translated->get<std::string>();
}

}  // namespace cx
