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

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "prepub/analysis.hpp"
#include "prepub/document.hpp"
#include "prepub/matching.hpp"

namespace prepub::cli {

/// On-disk layout of a pipeline store. Each stage reads the previous stage's
/// files and writes its own, so any stage can be rerun or fed external data.
class Store {
 public:
  explicit Store(std::filesystem::path root) : root_(std::move(root)) {}

  const std::filesystem::path& root() const noexcept { return root_; }
  std::filesystem::path preprints() const { return root_ / "preprints.jsonl"; }
  std::filesystem::path published() const { return root_ / "published.jsonl"; }
  std::filesystem::path harvest_state() const { return root_ / "harvest" / "state.json"; }
  std::filesystem::path cache_dir() const { return root_ / "cache"; }
  std::filesystem::path manifest() const { return root_ / "pairs.jsonl"; }
  std::filesystem::path unmatched() const { return root_ / "unmatched.jsonl"; }
  std::filesystem::path conflicts() const { return root_ / "conflicts.log"; }
  std::filesystem::path comparison_table(analysis::VersionSelect v) const;
  std::filesystem::path reports_dir() const { return root_ / "reports"; }

  /// Creates the root directory if needed.
  void ensure() const;

 private:
  std::filesystem::path root_;
};

/// Writes `text` to a sibling temp file, then renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& text);

struct ManifestEntry {
  std::string doi;
  std::string preprint_source_id;
  std::vector<int> preprint_versions;
  std::string published_source_id;
};

void write_manifest(const std::filesystem::path& path, std::span<const MatchedPair> pairs);
/// Throws StoreCorruption on a malformed line.
std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path);

/// Rebuilds matched pairs from the manifest and the document files. Entries
/// whose documents are missing are skipped and described in `problems`.
std::vector<MatchedPair> load_pairs(const Store& store, std::vector<std::string>& problems);

/// Replaces documents with the same (source, source_id, version_index) key:
/// sections, DOI and date present in the new record win, the rest are kept.
/// Other documents keep their order; new ones are appended.
void merge_documents(const std::filesystem::path& path, std::span<const Document> docs);

/// One line of a comparison table. `metric` is a Metric name or
/// "signed_length"; an absent score is a section missing on either side.
struct ComparisonRow {
  std::string doi;
  Section section = Section::kTitle;
  int preprint_version = 1;
  std::string metric;
  std::optional<double> score;
};

inline constexpr std::string_view kSignedLength = "signed_length";

std::vector<ComparisonRow> to_rows(std::span<const analysis::SectionComparison> comparisons);
void write_comparison_table(const std::filesystem::path& path, std::span<const ComparisonRow> rows);
/// Throws StoreCorruption on a malformed table.
std::vector<ComparisonRow> read_comparison_table(const std::filesystem::path& path);

/// Minimal CSV quoting: fields with commas, quotes or newlines are quoted.
std::string csv_field(std::string_view s);
/// Shortest round-trip representation of a double.
std::string format_double(double v);

}  // namespace prepub::cli
