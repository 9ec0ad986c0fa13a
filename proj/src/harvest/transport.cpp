// Copyright 2026 The prepub Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "prepub/transport.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <thread>

#include "prepub/errors.hpp"

namespace prepub::harvest {

const std::string* HttpResponse::header(std::string_view name) const {
  std::string key(name);
  std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) { return std::tolower(c); });
  const auto it = headers.find(key);
  return it == headers.end() ? nullptr : &it->second;
}

std::string host_of(std::string_view url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string_view::npos) return std::string(url);
  const auto host_end = url.find_first_of("/?#", scheme_end + 3);
  std::string host(url.substr(0, host_end));
  std::transform(host.begin(), host.end(), host.begin(), [](unsigned char c) { return std::tolower(c); });
  return host;
}

std::string url_encode(std::string_view s, std::string_view keep) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : s) {
    if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~' || keep.find(static_cast<char>(c)) != std::string_view::npos) {
      out += static_cast<char>(c);
    } else {
      out += '%';
      out += kHex[c >> 4];
      out += kHex[c & 0xF];
    }
  }
  return out;
}

void ReplayTransport::add(const std::string& url, HttpResponse response) {
  std::map<std::string, std::string> lowered;
  for (auto& [k, v] : response.headers) {
    std::string key = k;
    std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) { return std::tolower(c); });
    lowered[key] = v;
  }
  response.headers = std::move(lowered);
  std::lock_guard lock(mu_);
  entries_[url].push_back({false, {}, std::move(response)});
}

void ReplayTransport::add_failure(const std::string& url, std::string message) {
  std::lock_guard lock(mu_);
  entries_[url].push_back({true, std::move(message), {}});
}

std::unique_ptr<ReplayTransport> ReplayTransport::load(const std::filesystem::path& dir) {
  const auto index = dir / "exchanges.json";
  std::ifstream in(index);
  if (!in) throw std::runtime_error("cannot open fixture index " + index.string());
  auto transport = std::make_unique<ReplayTransport>();
  const auto doc = nlohmann::json::parse(in);
  for (const auto& ex : doc.at("exchanges")) {
    const auto url = ex.at("url").get<std::string>();
    if (ex.contains("failure")) {
      transport->add_failure(url, ex.at("failure").get<std::string>());
      continue;
    }
    HttpResponse r;
    r.status = ex.value("status", 200);
    if (ex.contains("headers")) r.headers = ex.at("headers").get<std::map<std::string, std::string>>();
    if (ex.contains("body_file")) {
      std::ifstream body(dir / ex.at("body_file").get<std::string>(), std::ios::binary);
      if (!body) throw std::runtime_error("missing fixture body " + ex.at("body_file").get<std::string>());
      std::stringstream ss;
      ss << body.rdbuf();
      r.body = ss.str();
    } else {
      r.body = ex.value("body", std::string{});
    }
    transport->add(url, std::move(r));
  }
  return transport;
}

HttpResponse ReplayTransport::get(const std::string& url) {
  std::lock_guard lock(mu_);
  log_.push_back({url, std::chrono::steady_clock::now()});
  const auto it = entries_.find(url);
  if (it == entries_.end() || it->second.empty()) {
    throw TransportError("no recorded response for " + url);
  }
  auto& queue = it->second;
  Entry entry = queue.front();
  if (queue.size() > 1) queue.pop_front();
  if (entry.failure) throw TransportError(entry.message + " (" + url + ")");
  return entry.response;
}

std::vector<ReplayTransport::Request> ReplayTransport::requests() const {
  std::lock_guard lock(mu_);
  return log_;
}

PoliteTransport::PoliteTransport(Transport& inner, std::chrono::milliseconds min_interval,
                                 RetryPolicy retry)
    : inner_(inner), min_interval_(min_interval), retry_(retry), rng_(retry.seed) {
  if (min_interval_.count() <= 0) throw std::invalid_argument("minimum request interval must be positive");
  if (retry_.max_retries < 0) throw std::invalid_argument("max_retries must be non-negative");
}

PoliteTransport::HostState& PoliteTransport::host_state(const std::string& host) {
  std::lock_guard lock(hosts_mu_);
  auto& slot = hosts_[host];
  if (!slot) slot = std::make_unique<HostState>();
  return *slot;
}

std::chrono::milliseconds PoliteTransport::backoff(int attempt) {
  double factor = 1.0;
  {
    std::lock_guard lock(rng_mu_);
    factor += retry_.jitter * std::uniform_real_distribution<double>(0.0, 1.0)(rng_);
  }
  const double ms = static_cast<double>(retry_.backoff_base.count()) * static_cast<double>(1 << attempt) * factor;
  return std::chrono::milliseconds(static_cast<std::int64_t>(ms));
}

HttpResponse PoliteTransport::get(const std::string& url) {
  HostState& host = host_state(host_of(url));
  std::lock_guard lock(host.mu);
  for (int attempt = 0;; ++attempt) {
    if (host.used) {
      const auto earliest = host.last_start + min_interval_;
      if (std::chrono::steady_clock::now() < earliest) std::this_thread::sleep_until(earliest);
    }
    host.used = true;
    host.last_start = std::chrono::steady_clock::now();
    try {
      HttpResponse r = inner_.get(url);
      const bool retryable = r.status == 429 || r.status >= 500;
      if (!retryable || attempt >= retry_.max_retries) return r;
    } catch (const TransportError&) {
      if (attempt >= retry_.max_retries) throw;
    }
    std::this_thread::sleep_for(backoff(attempt));
  }
}

}  // namespace prepub::harvest
