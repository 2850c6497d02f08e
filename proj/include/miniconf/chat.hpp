#pragma once

#include <chrono>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "miniconf/model.hpp"

namespace miniconf {

/// "paper-<uid>".
std::string channel_name(const PaperRecord& paper);

/// Error code a chat server puts in the response body's "error" field when
/// the channel is already there.
inline constexpr const char* kChannelExistsCode = "channel_exists";
inline constexpr const char* kCreateChannelPath = "/api/channels.create";

struct ChatServerClient {
  std::string base_url;
  std::string auth_token;
  std::chrono::milliseconds timeout{5000};
  int max_retries = 3;
  std::chrono::milliseconds initial_backoff{200};  // doubles per retry
  int max_in_flight = 1;
};

struct ChannelFailure {
  std::string channel;
  std::string message;
  bool operator==(const ChannelFailure&) const = default;
};

struct ProvisionReport {
  std::vector<std::string> created;
  std::vector<std::string> already_existed;
  std::vector<ChannelFailure> failed;

  std::size_t total() const { return created.size() + already_existed.size() + failed.size(); }
};

/// The server refused our credentials. Provisioning stops at once.
class ChatAuthError : public std::runtime_error {
 public:
  ChatAuthError(std::string channel, int status, ProvisionReport partial);
  const std::string& channel() const { return channel_; }
  int status() const { return status_; }
  const ProvisionReport& partial_report() const { return partial_; }

 private:
  std::string channel_;
  int status_;
  ProvisionReport partial_;
};

class ChatConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// POSTs {"name": channel} to <base_url>/api/channels.create for every paper
/// with a bearer token. "channel_exists" responses count as already_existed.
/// Timeouts, transport errors and 5xx responses are retried with exponential
/// backoff, at most max_retries times per channel; anything still failing is
/// recorded and provisioning continues. Result lists keep paper order.
ProvisionReport provision_channels(const std::vector<PaperRecord>& papers,
                                   const ChatServerClient& client, const LogSink& log = {});

}  // namespace miniconf
