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


#include "prepub/cli/store.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "prepub/errors.hpp"
#include "prepub/interchange.hpp"

namespace prepub::cli {
namespace fs = std::filesystem;
using nlohmann::ordered_json;

fs::path Store::comparison_table(analysis::VersionSelect v) const {
  return root_ / "comparisons" / (std::string(analysis::to_string(v)) + ".csv");
}

void Store::ensure() const { fs::create_directories(root_); }

void write_file_atomic(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
  }
  fs::rename(tmp, path);
}

void write_manifest(const fs::path& path, std::span<const MatchedPair> pairs) {
  std::string text;
  for (const auto& p : pairs) {
    ordered_json j;
    j["doi"] = p.doi;
    j["preprint_source_id"] = p.first().source_id;
    auto versions = ordered_json::array();
    for (const auto& v : p.preprint_versions) versions.push_back(v.version_index);
    j["preprint_versions"] = versions;
    j["published_source_id"] = p.published.source_id;
    text += j.dump() + "\n";
  }
  write_file_atomic(path, text);
}

std::vector<ManifestEntry> read_manifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw StoreCorruption("cannot read " + path.string());
  std::vector<ManifestEntry> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      ManifestEntry e;
      e.doi = j.at("doi").get<std::string>();
      e.preprint_source_id = j.at("preprint_source_id").get<std::string>();
      e.preprint_versions = j.at("preprint_versions").get<std::vector<int>>();
      e.published_source_id = j.at("published_source_id").get<std::string>();
      if (e.preprint_versions.empty()) throw std::invalid_argument("no preprint versions");
      out.push_back(std::move(e));
    } catch (const std::exception& e) {
      throw StoreCorruption(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

std::vector<MatchedPair> load_pairs(const Store& store, std::vector<std::string>& problems) {
  const auto entries = read_manifest(store.manifest());
  const auto preprints = read_documents(store.preprints());
  const auto published = read_documents(store.published());

  std::map<std::pair<std::string, int>, const Document*> pre_index;
  for (const auto& d : preprints) pre_index.try_emplace({d.source_id, d.version_index}, &d);
  std::map<std::string, const Document*> pub_index;
  for (const auto& d : published) pub_index.try_emplace(d.source_id, &d);

  std::vector<MatchedPair> pairs;
  for (const auto& e : entries) {
    MatchedPair p;
    p.doi = e.doi;
    bool ok = true;
    for (int v : e.preprint_versions) {
      auto it = pre_index.find({e.preprint_source_id, v});
      if (it == pre_index.end()) {
        problems.push_back(e.doi + ": preprint " + e.preprint_source_id + " v" + std::to_string(v) + " not in store");
        ok = false;
        break;
      }
      p.preprint_versions.push_back(*it->second);
    }
    auto pub = pub_index.find(e.published_source_id);
    if (ok && pub == pub_index.end()) {
      problems.push_back(e.doi + ": published record " + e.published_source_id + " not in store");
      ok = false;
    }
    if (!ok) continue;
    p.published = *pub->second;
    pairs.push_back(std::move(p));
  }
  return pairs;
}

void merge_documents(const fs::path& path, std::span<const Document> docs) {
  auto existing = read_documents(path);
  using Key = std::tuple<Source, std::string, int>;
  std::map<Key, std::size_t> index;
  for (std::size_t i = 0; i < existing.size(); ++i) {
    index.try_emplace(Key{existing[i].source, existing[i].source_id, existing[i].version_index}, i);
  }
  for (const auto& d : docs) {
    auto [it, inserted] = index.try_emplace(Key{d.source, d.source_id, d.version_index}, existing.size());
    if (inserted) {
      existing.push_back(d);
      continue;
    }
    auto& old = existing[it->second];
    for (auto s : kAllSections) {
      if (d.sections.get(s)) old.sections.get(s) = d.sections.get(s);
    }
    if (d.doi) old.doi = d.doi;
    if (d.version_date) old.version_date = d.version_date;
    old.provenance = d.provenance;
  }
  std::ostringstream out;
  write_documents(out, existing);
  write_file_atomic(path, out.str());
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  if (quoted) throw std::invalid_argument("unterminated quote");
  return fields;
}

constexpr std::string_view kTableHeader = "doi,section,preprint_version,metric,score";

}  // namespace

std::vector<ComparisonRow> to_rows(std::span<const analysis::SectionComparison> comparisons) {
  std::vector<ComparisonRow> rows;
  rows.reserve(comparisons.size() * (analysis::kAllMetrics.size() + 1));
  for (const auto& c : comparisons) {
    auto emit = [&](std::string metric, std::optional<double> score) {
      rows.push_back({c.doi, c.section, c.preprint_version_index, std::move(metric), score});
    };
    for (auto m : analysis::kAllMetrics) {
      emit(std::string(analysis::to_string(m)), c.scores ? std::optional(c.scores->get(m)) : std::nullopt);
    }
    std::optional<double> signed_len;
    if (c.scores && !c.scores->signed_length.both_empty) signed_len = c.scores->signed_length.value;
    emit(std::string(kSignedLength), signed_len);
  }
  return rows;
}

void write_comparison_table(const fs::path& path, std::span<const ComparisonRow> rows) {
  std::string text(kTableHeader);
  text += '\n';
  for (const auto& r : rows) {
    text += csv_field(r.doi);
    text += ',';
    text += to_string(r.section);
    text += ',';
    text += std::to_string(r.preprint_version);
    text += ',';
    text += r.metric;
    text += ',';
    text += r.score ? format_double(*r.score) : "null";
    text += '\n';
  }
  write_file_atomic(path, text);
}

std::vector<ComparisonRow> read_comparison_table(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw StoreCorruption("cannot read " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != kTableHeader) {
    throw StoreCorruption(path.string() + ": missing or unexpected header");
  }
  std::vector<ComparisonRow> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      const auto f = split_csv_line(line);
      if (f.size() != 5) throw std::invalid_argument("expected 5 fields");
      ComparisonRow r;
      r.doi = f[0];
      auto section = parse_section(f[1]);
      if (!section) throw std::invalid_argument("unknown section '" + f[1] + "'");
      r.section = *section;
      r.preprint_version = std::stoi(f[2]);
      if (f[3] != kSignedLength && !analysis::parse_metric(f[3])) {
        throw std::invalid_argument("unknown metric '" + f[3] + "'");
      }
      r.metric = f[3];
      if (f[4] != "null") {
        double v = 0;
        const auto [ptr, ec] = std::from_chars(f[4].data(), f[4].data() + f[4].size(), v);
        if (ec != std::errc() || ptr != f[4].data() + f[4].size()) {
          throw std::invalid_argument("bad score '" + f[4] + "'");
        }
        r.score = v;
      }
      rows.push_back(std::move(r));
    } catch (const std::exception& e) {
      throw StoreCorruption(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return rows;
}

}  // namespace prepub::cli
