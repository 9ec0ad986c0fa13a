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

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "prepub/analysis.hpp"
#include "prepub/errors.hpp"

namespace prepub::analysis {

std::size_t bin_index(double score) {
  if (!(score >= 0.0 && score <= 1.0)) {
    throw OutOfRangeScore("score " + std::to_string(score) + " outside [0,1]");
  }
  // Scores such as 0.7 are not exact in binary; snap values within 1e-9 of a
  // tenth onto it so decimal boundaries behave as written.
  double tenths = score * 10.0;
  const double nearest = std::round(tenths);
  if (std::abs(tenths - nearest) < 1e-9) tenths = nearest;
  const long bin = 9 - static_cast<long>(std::floor(tenths));
  return static_cast<std::size_t>(std::clamp(bin, 0L, 9L));
}

double BinnedDistribution::corpus_pct(std::size_t bin) const {
  if (corpus_total == 0) return 0.0;
  return 100.0 * static_cast<double>(bins.at(bin).count) / static_cast<double>(corpus_total);
}

std::string BinnedDistribution::range_label(std::size_t bin) {
  if (bin >= kBinCount) throw std::out_of_range("bin index");
  char buf[16];
  const int hi = 10 - static_cast<int>(bin);
  std::snprintf(buf, sizeof buf, "%d.%d-%d.%d", hi / 10, hi % 10, (hi - 1) / 10, (hi - 1) % 10);
  return buf;
}

BinnedDistribution bin_scores(Metric metric, std::span<const double> scores,
                              std::optional<std::uint64_t> corpus_total) {
  if (scores.empty()) throw std::invalid_argument("cannot bin an empty score list");
  BinnedDistribution d;
  d.metric = metric;
  for (double s : scores) ++d.bins[bin_index(s)].count;
  d.total = scores.size();
  d.corpus_total = corpus_total.value_or(d.total);
  for (auto& b : d.bins) b.relative_pct = 100.0 * static_cast<double>(b.count) / static_cast<double>(d.total);
  return d;
}

std::array<double, kBinCount> delta_report(const BinnedDistribution& first, const BinnedDistribution& last) {
  if (first.metric != last.metric) {
    throw MetricMismatch("cannot compare " + std::string(to_string(first.metric)) + " with " +
                         std::string(to_string(last.metric)));
  }
  std::array<double, kBinCount> delta{};
  for (std::size_t i = 0; i < kBinCount; ++i) delta[i] = first.bins[i].relative_pct - last.bins[i].relative_pct;
  return delta;
}

}  // namespace prepub::analysis
