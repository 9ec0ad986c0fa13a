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

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include <algorithm>

#include "prepub/errors.hpp"
#include "prepub/transport.hpp"

namespace prepub::harvest {

HttpTransport::HttpTransport(std::chrono::seconds timeout, std::string user_agent)
    : timeout_(timeout), user_agent_(std::move(user_agent)) {}

HttpResponse HttpTransport::get(const std::string& url) {
  const std::string base = host_of(url);
  if (base == url && url.find("://") == std::string::npos) {
    throw TransportError("not an absolute URL: " + url);
  }
  std::string path = url.substr(base.size());
  if (path.empty()) path = "/";

  httplib::Client client(base);
  client.set_follow_location(true);
  client.set_connection_timeout(timeout_);
  client.set_read_timeout(timeout_);
  const httplib::Headers headers{{"User-Agent", user_agent_}};
  auto result = client.Get(path, headers);
  if (!result) {
    throw TransportError("cannot reach " + base + ": " + httplib::to_string(result.error()));
  }
  HttpResponse r;
  r.status = result->status;
  r.body = result->body;
  for (const auto& [k, v] : result->headers) {
    std::string key = k;
    std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) { return std::tolower(c); });
    r.headers[key] = v;
  }
  return r;
}

}  // namespace prepub::harvest
