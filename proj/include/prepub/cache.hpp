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
#include <filesystem>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "prepub/crossref.hpp"
#include "prepub/transport.hpp"

namespace prepub::harvest {

struct CachePolicy {
  std::filesystem::path root_dir;
  /// Must be positive.
  std::chrono::milliseconds min_request_interval{1000};
  int max_retries = 3;
  std::chrono::milliseconds backoff_base{500};
};

/// Sidecar record stored next to every cached object.
struct ObjectProvenance {
  std::string doi;
  std::string url;
  std::string fetched_at;
  std::string content_type;
  std::uint64_t byte_length = 0;
};

struct FailureRecord {
  std::string time;
  std::string doi;
  std::string url;
  std::string reason;
};

struct DownloadOutcome {
  FullTextLink link;
  std::optional<std::filesystem::path> path;
  std::string error;
};

/// Content-addressed store for downloaded payloads:
///   objects/<first two hex digits>/<sha256>
///   meta/<sha256>.prov      JSON provenance of the first fetch
///   urls.tsv                url -> digest index, append-only
///   failures.log            one JSON record per failed download, append-only
/// Safe to use from several threads.
class ContentCache {
 public:
  /// `transport` is wrapped with the policy's politeness and retry rules.
  ContentCache(CachePolicy policy, Transport& transport);

  /// Returns the cached path for the link's URL, fetching it on a miss.
  /// Throws DownloadFailed after recording the failure in the ledger.
  std::filesystem::path download(const FullTextLink& link);

  /// Fetches many links, at most `concurrency` hosts at a time and strictly
  /// one request at a time per host. Failures do not stop the batch. Results
  /// follow input order.
  std::vector<DownloadOutcome> download_all(std::span<const FullTextLink> links, std::size_t concurrency);

  /// Stores bytes that did not come over the network (e.g. a bulk archive
  /// member) and returns the object path.
  std::filesystem::path put(std::string_view bytes, const ObjectProvenance& provenance);

  std::optional<std::filesystem::path> lookup(const std::string& url) const;
  std::optional<ObjectProvenance> provenance(const std::string& digest) const;
  std::vector<FailureRecord> failures() const;

  std::filesystem::path object_path(const std::string& digest) const;
  const CachePolicy& policy() const noexcept { return policy_; }

 private:
  void record_failure(const FullTextLink& link, const std::string& reason);
  std::filesystem::path commit(const std::filesystem::path& tmp, const std::string& digest,
                               const ObjectProvenance& provenance, const std::string& url);

  CachePolicy policy_;
  PoliteTransport transport_;
  mutable std::mutex mu_;
  std::unordered_map<std::string, std::string> url_index_;
};

/// Hex SHA-256 of `bytes`.
std::string sha256_hex(std::string_view bytes);

/// The current UTC time as "YYYY-MM-DDTHH:MM:SSZ".
std::string utc_timestamp();

/// Fetches `link` into `cache` (see ContentCache::download).
std::filesystem::path download_to_cache(const FullTextLink& link, ContentCache& cache);

}  // namespace prepub::harvest
