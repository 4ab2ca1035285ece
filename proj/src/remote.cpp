#include "epiladder/remote.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#ifdef EPILADDER_HAVE_OPENSSL
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>

#include "epiladder/errors.hpp"

namespace epiladder {

using nlohmann::json;

std::chrono::milliseconds backoff_delay(const RetryPolicy& policy, int failed_attempt, std::mt19937_64& rng) {
  const double base = static_cast<double>(policy.initial_backoff.count()) *
                      std::pow(policy.multiplier, std::max(0, failed_attempt - 1));
  const double capped = std::min(base, static_cast<double>(policy.max_backoff.count()));
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  const double scaled = capped * (1.0 - policy.jitter + 2.0 * policy.jitter * u);
  const double clamped = std::clamp(scaled, 0.0, static_cast<double>(policy.max_backoff.count()));
  return std::chrono::milliseconds(static_cast<long long>(std::llround(clamped)));
}

void check_remote_settings(const RemoteSettings& s) {
  if (s.endpoint.empty()) throw ConfigError("remote responder needs an endpoint");
  if (s.model.empty()) throw ConfigError("remote responder needs a model identifier");
  if (s.temperature < 0) throw ConfigError("temperature must be >= 0");
  if (s.max_tokens < 1) throw ConfigError("max_tokens must be >= 1");
  if (s.retry.max_attempts < 1) throw ConfigError("retry.max_attempts must be >= 1");
  if (s.retry.multiplier < 1.0) throw ConfigError("retry.multiplier must be >= 1");
  if (s.retry.jitter < 0 || s.retry.jitter > 1) throw ConfigError("retry.jitter must be within [0, 1]");
  if (s.max_concurrency < 1) throw ConfigError("max_concurrency must be >= 1");
  if (s.requests_per_second < 0) throw ConfigError("requests_per_second must be >= 0");
  parse_endpoint(s.endpoint);
}

std::string Endpoint::base() const { return scheme + "://" + host + ":" + std::to_string(port); }

Endpoint parse_endpoint(const std::string& url) {
  Endpoint e;
  const auto sep = url.find("://");
  if (sep == std::string::npos) throw ConfigError("endpoint '" + url + "' has no scheme");
  e.scheme = url.substr(0, sep);
  if (e.scheme != "http" && e.scheme != "https") throw ConfigError("endpoint scheme must be http or https");
  std::string rest = url.substr(sep + 3);
  const auto slash = rest.find('/');
  std::string authority = rest.substr(0, slash);
  e.path = slash == std::string::npos ? "/" : rest.substr(slash);
  const auto colon = authority.rfind(':');
  if (colon != std::string::npos) {
    e.host = authority.substr(0, colon);
    try {
      e.port = std::stoi(authority.substr(colon + 1));
    } catch (const std::exception&) {
      throw ConfigError("endpoint '" + url + "' has a bad port");
    }
  } else {
    e.host = authority;
    e.port = e.scheme == "https" ? 443 : 80;
  }
  if (e.host.empty()) throw ConfigError("endpoint '" + url + "' has no host");
  return e;
}

json build_chat_request(const RemoteSettings& settings, const std::string& prompt) {
  return json{{"model", settings.model},
              {"messages", json::array({json{{"role", "user"}, {"content", prompt}}})},
              {"temperature", settings.temperature},
              {"max_tokens", settings.max_tokens}};
}

std::optional<std::string> extract_reply_text(const json& reply) {
  auto first_text_part = [](const json& parts) -> std::optional<std::string> {
    for (const auto& part : parts) {
      if (part.is_string()) return part.get<std::string>();
      if (part.is_object() && part.contains("text") && part["text"].is_string()) return part["text"].get<std::string>();
    }
    return std::nullopt;
  };
  if (!reply.is_object()) return std::nullopt;
  if (auto choices = reply.find("choices"); choices != reply.end() && choices->is_array() && !choices->empty()) {
    const json& first = (*choices)[0];
    if (first.contains("message") && first["message"].contains("content")) {
      const json& content = first["message"]["content"];
      if (content.is_string()) return content.get<std::string>();
      if (content.is_array()) return first_text_part(content);
    }
    if (first.contains("text") && first["text"].is_string()) return first["text"].get<std::string>();
    return std::nullopt;
  }
  if (auto content = reply.find("content"); content != reply.end() && content->is_array()) {
    return first_text_part(*content);
  }
  if (auto candidates = reply.find("candidates"); candidates != reply.end() && candidates->is_array() &&
                                                   !candidates->empty()) {
    const json& c = (*candidates)[0];
    if (c.contains("content") && c["content"].contains("parts") && c["content"]["parts"].is_array()) {
      return first_text_part(c["content"]["parts"]);
    }
  }
  return std::nullopt;
}

TokenBucket::TokenBucket(double rate_per_second, double burst)
    : rate_(rate_per_second), burst_(std::max(1.0, burst)), tokens_(std::max(1.0, burst)),
      last_(std::chrono::steady_clock::now()) {}

void TokenBucket::acquire() {
  if (rate_ <= 0) return;
  for (;;) {
    std::chrono::duration<double> wait{};
    {
      std::lock_guard lock(mutex_);
      const auto now = std::chrono::steady_clock::now();
      tokens_ = std::min(burst_, tokens_ + std::chrono::duration<double>(now - last_).count() * rate_);
      last_ = now;
      if (tokens_ >= 1.0) {
        tokens_ -= 1.0;
        return;
      }
      wait = std::chrono::duration<double>((1.0 - tokens_) / rate_);
    }
    std::this_thread::sleep_for(wait);
  }
}

ChatClient::ChatClient(RemoteSettings settings, std::string token, Sleeper sleeper)
    : settings_(std::move(settings)),
      token_(std::move(token)),
      endpoint_(parse_endpoint(settings_.endpoint)),
      sleeper_(sleeper ? std::move(sleeper) : Sleeper([](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); })),
      bucket_(settings_.requests_per_second, settings_.max_concurrency),
      rng_(std::random_device{}()) {
  check_remote_settings(settings_);
#ifndef EPILADDER_HAVE_OPENSSL
  if (endpoint_.scheme == "https") throw ConfigError("https endpoints need a build with OpenSSL");
#endif
}

RemoteOutcome ChatClient::complete(const std::string& prompt) {
  RemoteOutcome outcome;
  const std::string body = build_chat_request(settings_, prompt).dump();
  httplib::Headers headers;
  if (!token_.empty()) headers.emplace(settings_.auth_header, settings_.auth_prefix + token_);

  httplib::Client client(endpoint_.base());
  const auto seconds = std::chrono::duration_cast<std::chrono::seconds>(settings_.timeout);
  const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(settings_.timeout - seconds);
  client.set_connection_timeout(seconds.count(), micros.count());
  client.set_read_timeout(seconds.count(), micros.count());
  client.set_write_timeout(seconds.count(), micros.count());

  for (int attempt = 1; attempt <= settings_.retry.max_attempts; ++attempt) {
    bucket_.acquire();
    outcome.attempts = attempt;
    auto res = client.Post(endpoint_.path, headers, body, "application/json");
    bool retryable = false;
    std::chrono::milliseconds server_hint{0};
    if (!res) {
      outcome.error = "transport: " + httplib::to_string(res.error());
      retryable = true;
    } else if (res->status == 200) {
      json reply;
      try {
        reply = json::parse(res->body);
      } catch (const json::parse_error&) {
        outcome.error = "malformed reply: body is not JSON";
        return outcome;
      }
      if (auto text = extract_reply_text(reply)) {
        outcome.ok = true;
        outcome.text = std::move(*text);
        outcome.error.clear();
        return outcome;
      }
      outcome.error = "malformed reply: no text block";
      return outcome;
    } else {
      outcome.error = "http " + std::to_string(res->status);
      retryable = res->status == 408 || res->status == 429 || res->status >= 500;
      if (res->has_header("Retry-After")) {
        try {
          server_hint = std::chrono::seconds(std::stoi(res->get_header_value("Retry-After")));
        } catch (const std::exception&) {
        }
      }
    }
    if (!retryable || attempt == settings_.retry.max_attempts) break;
    std::chrono::milliseconds delay;
    {
      std::lock_guard lock(rng_mutex_);
      delay = backoff_delay(settings_.retry, attempt, rng_);
    }
    sleeper_(std::max(delay, std::min(server_hint, settings_.retry.max_backoff)));
  }
  return outcome;
}

}  // namespace epiladder
