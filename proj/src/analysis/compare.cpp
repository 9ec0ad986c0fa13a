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

#include <algorithm>
#include <atomic>
#include <thread>

#include "prepub/analysis.hpp"
#include "prepub/utf8.hpp"

namespace prepub::analysis {

std::string_view to_string(Metric m) {
  switch (m) {
    case Metric::kLength:
      return "length";
    case Metric::kLevenshtein:
      return "levenshtein";
    case Metric::kCosine:
      return "cosine";
    case Metric::kSorensen:
      return "sorensen";
    case Metric::kJaccard:
      return "jaccard";
  }
  return "?";
}

std::optional<Metric> parse_metric(std::string_view s) {
  for (Metric m : kAllMetrics) {
    if (to_string(m) == s) return m;
  }
  return std::nullopt;
}

std::string_view to_string(VersionSelect v) { return v == VersionSelect::kFirst ? "first" : "last"; }

std::optional<VersionSelect> parse_version_select(std::string_view s) {
  if (s == "first") return VersionSelect::kFirst;
  if (s == "last") return VersionSelect::kLast;
  return std::nullopt;
}

double SimilarityScores::get(Metric m) const {
  switch (m) {
    case Metric::kLength:
      return length;
    case Metric::kLevenshtein:
      return levenshtein;
    case Metric::kCosine:
      return cosine;
    case Metric::kSorensen:
      return sorensen;
    case Metric::kJaccard:
      return jaccard;
  }
  return 0;
}

SimilarityScores Comparator::score(std::string_view preprint, std::string_view published) const {
  const auto a = utf8::decode(preprint);
  const auto b = utf8::decode(published);
  SimilarityScores s;
  s.length = simcore::length_similarity(a.size(), b.size());
  s.levenshtein = simcore::levenshtein_ratio(a, b, costs_);
  s.cosine = simcore::cosine_similarity(pipeline_.counts(preprint), pipeline_.counts(published));
  s.sorensen = simcore::char_set_sorensen(a, b);
  s.jaccard = simcore::char_set_jaccard(a, b);
  s.signed_length = simcore::signed_length_delta(a.size(), b.size());
  return s;
}

std::vector<SectionComparison> Comparator::compare_pair(const MatchedPair& pair, VersionSelect which) const {
  const Document& pre = which == VersionSelect::kFirst ? pair.first() : pair.last();
  std::vector<SectionComparison> out;
  out.reserve(kAllSections.size());
  for (Section section : kAllSections) {
    SectionComparison c;
    c.doi = pair.doi;
    c.section = section;
    c.preprint_version_index = pre.version_index;
    const auto& a = pre.sections.get(section);
    const auto& b = pair.published.sections.get(section);
    if (a && b) c.scores = score(*a, *b);
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<SectionComparison> compare_pairs(std::span<const MatchedPair> pairs, VersionSelect which,
                                             const Comparator& comparator, std::size_t threads) {
  std::vector<const MatchedPair*> order;
  order.reserve(pairs.size());
  for (const auto& p : pairs) order.push_back(&p);
  std::stable_sort(order.begin(), order.end(),
                   [](const MatchedPair* a, const MatchedPair* b) { return a->doi < b->doi; });

  std::vector<std::vector<SectionComparison>> per_pair(order.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max<std::size_t>(1, order.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < order.size(); i = next++) {
      per_pair[i] = comparator.compare_pair(*order[i], which);
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::vector<SectionComparison> out;
  out.reserve(order.size() * kAllSections.size());
  for (auto& v : per_pair) {
    for (auto& c : v) out.push_back(std::move(c));
  }
  return out;
}

}  // namespace prepub::analysis
