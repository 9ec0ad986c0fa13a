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

#include "prepub/cache.hpp"

#include <openssl/evp.h>

#include <json.hpp>

#include <atomic>
#include <ctime>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "prepub/errors.hpp"

namespace prepub::harvest {
namespace fs = std::filesystem;

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xF];
  }
  return out;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

namespace {

RetryPolicy retry_from(const CachePolicy& p) {
  RetryPolicy r;
  r.max_retries = p.max_retries;
  r.backoff_base = p.backoff_base;
  return r;
}

nlohmann::ordered_json to_json(const ObjectProvenance& p) {
  nlohmann::ordered_json j;
  j["doi"] = p.doi;
  j["url"] = p.url;
  j["fetched_at"] = p.fetched_at;
  j["content_type"] = p.content_type;
  j["byte_length"] = p.byte_length;
  return j;
}

std::string tmp_name() {
  static std::atomic<unsigned> counter{0};
  std::ostringstream s;
  s << "tmp-" << std::hash<std::thread::id>{}(std::this_thread::get_id()) << '-' << counter++ << ".part";
  return s.str();
}

}  // namespace

ContentCache::ContentCache(CachePolicy policy, Transport& transport)
    : policy_(std::move(policy)),
      transport_(transport, policy_.min_request_interval, retry_from(policy_)) {
  if (policy_.root_dir.empty()) throw std::invalid_argument("cache root directory not set");
  fs::create_directories(policy_.root_dir / "objects");
  fs::create_directories(policy_.root_dir / "meta");
  std::ifstream index(policy_.root_dir / "urls.tsv");
  std::string line;
  while (std::getline(index, line)) {
    const auto tab = line.rfind('\t');
    if (tab == std::string::npos) continue;
    url_index_[line.substr(0, tab)] = line.substr(tab + 1);
  }
}

fs::path ContentCache::object_path(const std::string& digest) const {
  return policy_.root_dir / "objects" / digest.substr(0, 2) / digest;
}

std::optional<fs::path> ContentCache::lookup(const std::string& url) const {
  std::lock_guard lock(mu_);
  const auto it = url_index_.find(url);
  if (it == url_index_.end()) return std::nullopt;
  auto path = object_path(it->second);
  if (!fs::exists(path)) return std::nullopt;
  return path;
}

std::optional<ObjectProvenance> ContentCache::provenance(const std::string& digest) const {
  std::ifstream in(policy_.root_dir / "meta" / (digest + ".prov"));
  if (!in) return std::nullopt;
  const auto j = nlohmann::json::parse(in);
  ObjectProvenance p;
  p.doi = j.value("doi", std::string{});
  p.url = j.value("url", std::string{});
  p.fetched_at = j.value("fetched_at", std::string{});
  p.content_type = j.value("content_type", std::string{});
  p.byte_length = j.value("byte_length", std::uint64_t{0});
  return p;
}

void ContentCache::record_failure(const FullTextLink& link, const std::string& reason) {
  nlohmann::ordered_json j;
  j["time"] = utc_timestamp();
  j["doi"] = link.doi;
  j["url"] = link.url;
  j["reason"] = reason;
  std::lock_guard lock(mu_);
  std::ofstream out(policy_.root_dir / "failures.log", std::ios::app);
  out << j.dump() << '\n';
}

std::vector<FailureRecord> ContentCache::failures() const {
  std::vector<FailureRecord> out;
  std::lock_guard lock(mu_);
  std::ifstream in(policy_.root_dir / "failures.log");
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto j = nlohmann::json::parse(line);
    out.push_back({j.value("time", ""), j.value("doi", ""), j.value("url", ""), j.value("reason", "")});
  }
  return out;
}

fs::path ContentCache::commit(const fs::path& tmp, const std::string& digest,
                              const ObjectProvenance& provenance, const std::string& url) {
  const auto final_path = object_path(digest);
  std::lock_guard lock(mu_);
  fs::create_directories(final_path.parent_path());
  if (fs::exists(final_path)) {
    fs::remove(tmp);
  } else {
    fs::rename(tmp, final_path);
    std::ofstream prov(policy_.root_dir / "meta" / (digest + ".prov"));
    prov << to_json(provenance).dump(2) << '\n';
  }
  if (!url.empty() && url_index_.find(url) == url_index_.end()) {
    url_index_[url] = digest;
    std::ofstream index(policy_.root_dir / "urls.tsv", std::ios::app);
    index << url << '\t' << digest << '\n';
  }
  return final_path;
}

fs::path ContentCache::put(std::string_view bytes, const ObjectProvenance& provenance) {
  const auto digest = sha256_hex(bytes);
  const auto tmp = policy_.root_dir / "objects" / tmp_name();
  {
    std::ofstream out(tmp, std::ios::binary);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  }
  ObjectProvenance p = provenance;
  p.byte_length = bytes.size();
  return commit(tmp, digest, p, provenance.url);
}

fs::path ContentCache::download(const FullTextLink& link) {
  if (auto hit = lookup(link.url)) return *hit;

  HttpResponse r;
  try {
    r = transport_.get(link.url);
  } catch (const TransportError& e) {
    record_failure(link, e.what());
    throw DownloadFailed(link.url + ": " + e.what());
  }
  if (r.status != 200) {
    const auto reason = "HTTP " + std::to_string(r.status);
    record_failure(link, reason);
    throw DownloadFailed(link.url + ": " + reason);
  }

  const auto tmp = policy_.root_dir / "objects" / tmp_name();
  {
    std::ofstream out(tmp, std::ios::binary);
    out.write(r.body.data(), static_cast<std::streamsize>(r.body.size()));
  }
  if (const std::string* declared = r.header("content-length")) {
    std::uint64_t expected = 0;
    try {
      expected = std::stoull(*declared);
    } catch (const std::exception&) {
      expected = r.body.size() + 1;
    }
    const auto received = fs::file_size(tmp);
    if (received != expected) {
      fs::remove(tmp);
      const auto reason = "truncated: declared " + *declared + " bytes, received " + std::to_string(received);
      record_failure(link, reason);
      throw DownloadFailed(link.url + ": " + reason);
    }
  }

  ObjectProvenance p;
  p.doi = link.doi;
  p.url = link.url;
  p.fetched_at = utc_timestamp();
  const std::string* served_type = r.header("content-type");
  p.content_type = served_type ? *served_type : link.content_type;
  p.byte_length = r.body.size();
  return commit(tmp, sha256_hex(r.body), p, link.url);
}

std::vector<DownloadOutcome> ContentCache::download_all(std::span<const FullTextLink> links,
                                                        std::size_t concurrency) {
  std::vector<DownloadOutcome> results(links.size());
  std::map<std::string, std::vector<std::size_t>> by_host;
  for (std::size_t i = 0; i < links.size(); ++i) {
    results[i].link = links[i];
    by_host[host_of(links[i].url)].push_back(i);
  }
  std::vector<const std::vector<std::size_t>*> queues;
  for (const auto& [host, idx] : by_host) queues.push_back(&idx);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t q = next++; q < queues.size(); q = next++) {
      for (std::size_t i : *queues[q]) {
        try {
          results[i].path = download(links[i]);
        } catch (const DownloadFailed& e) {
          results[i].error = e.what();
        }
      }
    }
  };
  const std::size_t n = std::max<std::size_t>(1, std::min(concurrency, queues.size()));
  std::vector<std::thread> threads;
  for (std::size_t t = 0; t < n; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  return results;
}

fs::path download_to_cache(const FullTextLink& link, ContentCache& cache) { return cache.download(link); }

}  // namespace prepub::harvest
