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

#pragma once

#include <chrono>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace prepub::harvest {

struct HttpResponse {
  int status = 0;
  /// Header names are lowercase.
  std::map<std::string, std::string> headers;
  std::string body;

  const std::string* header(std::string_view name) const;
};

/// Every network access goes through a Transport. get() throws
/// TransportError when no response could be obtained at all; HTTP error
/// statuses are returned, not thrown.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual HttpResponse get(const std::string& url) = 0;
};

/// Live HTTP(S) client.
class HttpTransport : public Transport {
 public:
  explicit HttpTransport(std::chrono::seconds timeout = std::chrono::seconds(60),
                         std::string user_agent = "prepub/1.0 (mailto:undisclosed)");
  HttpResponse get(const std::string& url) override;

 private:
  std::chrono::seconds timeout_;
  std::string user_agent_;
};

/// Serves recorded responses keyed by exact URL and logs every request with
/// its start time. Unknown URLs raise TransportError.
class ReplayTransport : public Transport {
 public:
  struct Request {
    std::string url;
    std::chrono::steady_clock::time_point started;
  };

  /// Queue a response for `url`. Responses for one URL are served in order
  /// and the last one repeats.
  void add(const std::string& url, HttpResponse response);
  /// Queue a connection failure for `url`.
  void add_failure(const std::string& url, std::string message);

  /// Loads `<dir>/exchanges.json`:
  ///   {"exchanges": [{"url": ..., "status": 200, "headers": {...},
  ///                   "body": "..." | "body_file": "relative/path",
  ///                   "failure": "message"}]}
  static std::unique_ptr<ReplayTransport> load(const std::filesystem::path& dir);

  HttpResponse get(const std::string& url) override;
  std::vector<Request> requests() const;

 private:
  struct Entry {
    bool failure = false;
    std::string message;
    HttpResponse response;
  };
  mutable std::mutex mu_;
  std::unordered_map<std::string, std::deque<Entry>> entries_;
  std::vector<Request> log_;
};

struct RetryPolicy {
  int max_retries = 3;
  std::chrono::milliseconds backoff_base{500};
  /// Each backoff is stretched by a uniform factor in [1, 1 + jitter].
  double jitter = 0.25;
  std::uint64_t seed = 0x5eed;
};

/// Serializes requests per host, spaces their start times by at least
/// `min_interval`, and retries transport failures and 429/5xx responses with
/// exponential backoff. Requests to different hosts may run concurrently.
class PoliteTransport : public Transport {
 public:
  PoliteTransport(Transport& inner, std::chrono::milliseconds min_interval, RetryPolicy retry = {});
  HttpResponse get(const std::string& url) override;

 private:
  struct HostState {
    std::mutex mu;
    bool used = false;
    std::chrono::steady_clock::time_point last_start;
  };
  HostState& host_state(const std::string& host);
  std::chrono::milliseconds backoff(int attempt);

  Transport& inner_;
  std::chrono::milliseconds min_interval_;
  RetryPolicy retry_;
  std::mutex hosts_mu_;
  std::map<std::string, std::unique_ptr<HostState>> hosts_;
  std::mutex rng_mu_;
  std::mt19937_64 rng_;
};

/// "scheme://host[:port]" of a URL, lowercased; the whole string if it has no
/// scheme.
std::string host_of(std::string_view url);
/// Percent-encodes everything except unreserved characters and `keep`.
std::string url_encode(std::string_view s, std::string_view keep = "");

}  // namespace prepub::harvest
