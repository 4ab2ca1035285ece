#pragma once

// Generic chat-completion client used by the remote responder: one JSON
// request per prompt, retries with exponential backoff and jitter, and a
// token bucket on request starts.

#include <chrono>
#include <functional>
#include <mutex>
#include <optional>
#include <random>
#include <string>

#include <nlohmann/json.hpp>

namespace epiladder {

struct RetryPolicy {
  int max_attempts = 4;
  std::chrono::milliseconds initial_backoff{500};
  std::chrono::milliseconds max_backoff{20000};
  double multiplier = 2.0;
  /// Relative spread: the delay is scaled by a factor in [1 - jitter, 1 + jitter].
  double jitter = 0.2;
};

/// Delay after the `failed_attempt`-th failure (1-based), capped at
/// max_backoff.
std::chrono::milliseconds backoff_delay(const RetryPolicy& policy, int failed_attempt, std::mt19937_64& rng);

struct RemoteSettings {
  std::string endpoint;
  std::string model;
  double temperature = 0.0;
  int max_tokens = 1024;
  /// Name of the environment variable holding the API token; empty means
  /// no auth header.
  std::string auth_env;
  std::string auth_header = "Authorization";
  std::string auth_prefix = "Bearer ";
  std::chrono::milliseconds timeout{60000};
  RetryPolicy retry;
  int max_concurrency = 1;
  /// Request starts per second; 0 disables the limiter.
  double requests_per_second = 0.0;
};

void check_remote_settings(const RemoteSettings& settings);

struct Endpoint {
  std::string scheme;
  std::string host;
  int port = 0;
  std::string path;

  std::string base() const;
};

Endpoint parse_endpoint(const std::string& url);

nlohmann::json build_chat_request(const RemoteSettings& settings, const std::string& prompt);

/// First text block of a chat reply. Understands `choices[0].message.content`
/// (string or list of parts), `content[0].text` and `candidates[0].content.parts[0].text`.
std::optional<std::string> extract_reply_text(const nlohmann::json& reply);

/// Thread-safe token bucket. `acquire` blocks until a token is available.
class TokenBucket {
 public:
  TokenBucket(double rate_per_second, double burst);
  void acquire();

 private:
  double rate_;
  double burst_;
  double tokens_;
  std::chrono::steady_clock::time_point last_;
  std::mutex mutex_;
};

struct RemoteOutcome {
  bool ok = false;
  std::string text;
  int attempts = 0;
  std::string error;
};

class ChatClient {
 public:
  using Sleeper = std::function<void(std::chrono::milliseconds)>;

  /// `token` is the resolved credential (may be empty).
  ChatClient(RemoteSettings settings, std::string token, Sleeper sleeper = {});

  /// Sends one prompt, retrying transport errors, 408, 429 and 5xx up to
  /// max_attempts. Never throws for per-request failures.
  RemoteOutcome complete(const std::string& prompt);

  const RemoteSettings& settings() const noexcept { return settings_; }

 private:
  RemoteSettings settings_;
  std::string token_;
  Endpoint endpoint_;
  Sleeper sleeper_;
  TokenBucket bucket_;
  std::mutex rng_mutex_;
  std::mt19937_64 rng_;
};

}  // namespace epiladder
