#include "miniconf/chat.hpp"

#include <atomic>
#include <mutex>
#include <optional>
#include <thread>

#include <fmt/format.h>
#include <httplib.h>
#include <json.hpp>

namespace miniconf {

std::string channel_name(const PaperRecord& paper) { return "paper-" + paper.uid; }

ChatAuthError::ChatAuthError(std::string channel, int status, ProvisionReport partial)
    : std::runtime_error(fmt::format("chat server rejected credentials (HTTP {}) while creating '{}'",
                                     status, channel)),
      channel_(std::move(channel)),
      status_(status),
      partial_(std::move(partial)) {}

namespace {

struct Endpoint {
  std::string origin;       // scheme://host[:port]
  std::string path_prefix;  // "" or "/chat"
};

Endpoint split_url(const std::string& url) {
  auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos)
    throw ChatConfigError(fmt::format("chat server URL '{}' has no scheme", url));
  auto path_start = url.find('/', scheme_end + 3);
  Endpoint ep;
  ep.origin = url.substr(0, path_start);
  if (path_start != std::string::npos) ep.path_prefix = url.substr(path_start);
  while (!ep.path_prefix.empty() && ep.path_prefix.back() == '/') ep.path_prefix.pop_back();
  return ep;
}

enum class Outcome { created, existed, failed, transient, auth };

struct Attempt {
  Outcome outcome;
  int status = 0;
  std::string message;
};

Attempt classify(const httplib::Result& res) {
  if (!res) return {Outcome::transient, 0, httplib::to_string(res.error())};
  const int status = res->status;
  if (status == 401 || status == 403) return {Outcome::auth, status, "authentication rejected"};
  if (status >= 500) return {Outcome::transient, status, fmt::format("HTTP {}", status)};

  auto body = nlohmann::json::parse(res->body, nullptr, false);
  if (body.is_object() && body.contains("error") && body["error"] == kChannelExistsCode)
    return {Outcome::existed, status, {}};
  bool body_ok = !(body.is_object() && body.contains("ok") && body["ok"] == false);
  if (status >= 200 && status < 300 && body_ok) return {Outcome::created, status, {}};

  std::string detail = fmt::format("HTTP {}", status);
  if (body.is_object() && body.contains("error") && body["error"].is_string())
    detail += ": " + body["error"].get<std::string>();
  return {Outcome::failed, status, detail};
}

struct ChannelResult {
  Outcome outcome = Outcome::failed;
  int status = 0;
  std::string message;
  int retries = 0;
};

class Provisioner {
 public:
  Provisioner(const ChatServerClient& client, const LogSink& log)
      : client_(client), endpoint_(split_url(client.base_url)), log_(log) {}

  ChannelResult create(const std::string& channel, const std::atomic<bool>& abort) {
    httplib::Client http(endpoint_.origin);
    auto secs = std::chrono::duration_cast<std::chrono::seconds>(client_.timeout);
    auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(client_.timeout - secs);
    http.set_connection_timeout(secs.count(), usecs.count());
    http.set_read_timeout(secs.count(), usecs.count());
    http.set_write_timeout(secs.count(), usecs.count());
    http.set_bearer_token_auth(client_.auth_token);

    const std::string path = endpoint_.path_prefix + kCreateChannelPath;
    const std::string body = nlohmann::json{{"name", channel}}.dump();

    ChannelResult result;
    auto backoff = client_.initial_backoff;
    for (int attempt = 0;; ++attempt) {
      auto a = classify(http.Post(path, body, "application/json"));
      result.outcome = a.outcome;
      result.status = a.status;
      result.message = a.message;
      if (a.outcome != Outcome::transient) break;
      if (attempt >= client_.max_retries || abort.load()) {
        result.outcome = Outcome::failed;
        result.message = fmt::format("{} (gave up after {} retries)", a.message, attempt);
        break;
      }
      ++result.retries;
      log(fmt::format("retrying '{}' after {}: attempt {} of {}", channel, a.message, attempt + 1,
                      client_.max_retries));
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
    return result;
  }

 private:
  void log(const std::string& line) {
    std::lock_guard lock(log_mutex_);
    emit(log_, line);
  }

  const ChatServerClient& client_;
  Endpoint endpoint_;
  const LogSink& log_;
  std::mutex log_mutex_;
};

}  // namespace

ProvisionReport provision_channels(const std::vector<PaperRecord>& papers,
                                   const ChatServerClient& client, const LogSink& log) {
  ProvisionReport report;
  if (papers.empty()) return report;
  if (client.base_url.empty()) throw ChatConfigError("chat server URL is not configured");
  if (client.max_retries < 0) throw ChatConfigError("max_retries must be non-negative");

  Provisioner prov(client, log);
  std::vector<std::string> channels;
  channels.reserve(papers.size());
  for (const auto& p : papers) channels.push_back(channel_name(p));

  std::vector<std::optional<ChannelResult>> results(channels.size());
  std::atomic<bool> abort{false};
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (;;) {
      if (abort.load()) return;
      std::size_t i = next.fetch_add(1);
      if (i >= channels.size()) return;
      auto r = prov.create(channels[i], abort);
      if (r.outcome == Outcome::auth) abort.store(true);
      results[i] = std::move(r);
    }
  };

  const int threads = std::max(1, std::min<int>(client.max_in_flight, int(channels.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  std::optional<std::pair<std::string, int>> auth_failure;
  for (std::size_t i = 0; i < channels.size(); ++i) {
    if (!results[i]) continue;
    const auto& r = *results[i];
    switch (r.outcome) {
      case Outcome::created: report.created.push_back(channels[i]); break;
      case Outcome::existed: report.already_existed.push_back(channels[i]); break;
      case Outcome::auth:
        if (!auth_failure) auth_failure.emplace(channels[i], r.status);
        break;
      default: report.failed.push_back({channels[i], r.message}); break;
    }
  }
  if (auth_failure) throw ChatAuthError(auth_failure->first, auth_failure->second, std::move(report));

  emit(log, fmt::format("chat: {} created, {} already existed, {} failed", report.created.size(),
                        report.already_existed.size(), report.failed.size()));
  return report;
}

}  // namespace miniconf
