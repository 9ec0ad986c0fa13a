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

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "prepub/document.hpp"
#include "prepub/matching.hpp"
#include "prepub/simcore.hpp"
#include "prepub/textprep.hpp"

namespace prepub::analysis {

enum class Metric { kLength, kLevenshtein, kCosine, kSorensen, kJaccard };
inline constexpr std::array<Metric, 5> kAllMetrics{Metric::kLength, Metric::kLevenshtein, Metric::kCosine,
                                                   Metric::kSorensen, Metric::kJaccard};
std::string_view to_string(Metric m);
std::optional<Metric> parse_metric(std::string_view s);

enum class VersionSelect { kFirst, kLast };
std::string_view to_string(VersionSelect v);
std::optional<VersionSelect> parse_version_select(std::string_view s);

struct SimilarityScores {
  double length = 0;
  double levenshtein = 0;
  double cosine = 0;
  double sorensen = 0;
  double jaccard = 0;
  simcore::SignedLengthDelta signed_length;

  double get(Metric m) const;
};

struct SectionComparison {
  std::string doi;
  Section section = Section::kTitle;
  int preprint_version_index = 1;
  /// Absent when either side lacks the section.
  std::optional<SimilarityScores> scores;
};

/// Scores section pairs: cosine through the stopword/stemming chain, the
/// other measures on the raw section text.
class Comparator {
 public:
  Comparator() = default;
  Comparator(textprep::TermPipeline pipeline, simcore::EditCosts costs)
      : pipeline_(std::move(pipeline)), costs_(costs) {}

  SimilarityScores score(std::string_view preprint, std::string_view published) const;

  /// Exactly three records (title, abstract, body) for the chosen preprint
  /// version.
  std::vector<SectionComparison> compare_pair(const MatchedPair& pair, VersionSelect which) const;

  simcore::EditCosts costs() const noexcept { return costs_; }

 private:
  textprep::TermPipeline pipeline_;
  simcore::EditCosts costs_ = simcore::EditCosts::unit();
};

/// compare_pair over many pairs on `threads` workers. Output is ordered by
/// DOI, then section, whatever the thread count.
std::vector<SectionComparison> compare_pairs(std::span<const MatchedPair> pairs, VersionSelect which,
                                             const Comparator& comparator, std::size_t threads = 0);

inline constexpr std::size_t kBinCount = 10;

struct Bin {
  std::uint64_t count = 0;
  double relative_pct = 0;
};

/// Ten-bin histogram of one metric. Bin 0 holds the most similar scores
/// ([0.9, 1.0]); bin i covers [0.9 - 0.1 i, 1.0 - 0.1 i) below that.
struct BinnedDistribution {
  Metric metric = Metric::kLength;
  std::array<Bin, kBinCount> bins{};
  /// Number of scores binned; relative_pct uses this as denominator.
  std::uint64_t total = 0;
  /// Optional larger denominator (e.g. whole-corpus size) for corpus_pct().
  std::uint64_t corpus_total = 0;

  double corpus_pct(std::size_t bin) const;
  /// "1.0-0.9", "0.9-0.8", ..., "0.1-0.0".
  static std::string range_label(std::size_t bin);
};

/// Bin for a score in [0,1]; exact multiples of 0.1 go to the bin whose lower
/// edge they are (0.9 -> bin 0). Throws OutOfRangeScore otherwise.
std::size_t bin_index(double score);

/// Throws OutOfRangeScore for any score outside [0,1] and
/// std::invalid_argument for an empty list. `corpus_total` defaults to the
/// number of scores.
BinnedDistribution bin_scores(Metric metric, std::span<const double> scores,
                              std::optional<std::uint64_t> corpus_total = std::nullopt);

/// first.relative_pct[i] - last.relative_pct[i], in percentage points.
/// Throws MetricMismatch when the metrics differ.
std::array<double, kBinCount> delta_report(const BinnedDistribution& first, const BinnedDistribution& last);

enum class Venue { kPreprint, kPublisher, kSameDay };
std::string_view to_string(Venue v);

struct PrecedenceRecord {
  std::string doi;
  Venue first_venue = Venue::kSameDay;
  long day_gap = 0;
};

/// Inclusive range of day gaps; `hi` absent means unbounded.
struct DayRange {
  long lo = 0;
  std::optional<long> hi;

  bool contains(long gap) const { return gap >= lo && (!hi || gap <= *hi); }
  std::string label() const;
};

/// Parses "0,1-90,91-180,181-270,271-360,361+". The ranges must start at 0,
/// be contiguous, and end unbounded.
std::vector<DayRange> parse_day_ranges(std::string_view spec);
std::vector<DayRange> default_day_ranges();

struct PrecedenceExclusion {
  std::string doi;
  std::string reason;
};

struct PrecedenceReport {
  struct Row {
    DayRange range;
    std::uint64_t preprint_first = 0;
    std::uint64_t publisher_first = 0;
    std::uint64_t same_day = 0;
  };

  std::vector<PrecedenceRecord> records;
  std::vector<PrecedenceExclusion> exclusions;
  std::vector<Row> rows;
  std::uint64_t preprint_first = 0;
  std::uint64_t publisher_first = 0;
  std::uint64_t same_day = 0;
  /// Percentages of included pairs; all zero when no pair is included.
  double pct_preprint_first = 0;
  double pct_publisher_first = 0;
  double pct_same_day = 0;
};

/// Which venue each pair appeared in first, comparing the chosen preprint
/// version's date with the published date. Pairs missing either date are
/// excluded and listed.
PrecedenceReport precedence(std::span<const MatchedPair> pairs, VersionSelect which,
                            std::span<const DayRange> ranges);

}  // namespace prepub::analysis
