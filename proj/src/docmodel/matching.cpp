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

#include "prepub/matching.hpp"

#include <algorithm>
#include <map>

namespace prepub {
namespace {

UnmatchedEntry unmatched(const Document& d, std::string reason) {
  return {d.source_id, d.doi, d.source, d.version_index, std::move(reason)};
}

}  // namespace

MatchReport match_pairs(std::span<const Document> preprints, std::span<const Document> published) {
  MatchReport report;

  std::map<std::string, const Document*> publisher_by_doi;
  std::vector<const Document*> published_kept;
  for (const auto& doc : published) {
    if (!doc.doi) {
      report.unmatched.push_back(unmatched(doc, "no-doi"));
      continue;
    }
    auto [it, inserted] = publisher_by_doi.emplace(*doc.doi, &doc);
    if (!inserted) {
      report.conflicts.push_back({*doc.doi, Source::kPublisher, it->second->source_id, doc.source_id});
      report.unmatched.push_back(unmatched(doc, "duplicate-published"));
    }
  }

  // DOI -> versions of the first preprint source_id that claimed it.
  struct Group {
    std::string source_id;
    std::vector<const Document*> versions;
  };
  std::map<std::string, Group> groups;
  for (const auto& doc : preprints) {
    if (!doc.doi) {
      report.unmatched.push_back(unmatched(doc, "no-doi"));
      continue;
    }
    auto [it, inserted] = groups.try_emplace(*doc.doi, Group{doc.source_id, {}});
    Group& g = it->second;
    if (g.source_id != doc.source_id) {
      report.conflicts.push_back({*doc.doi, Source::kPreprint, g.source_id, doc.source_id});
      report.unmatched.push_back(unmatched(doc, "duplicate-preprint"));
      continue;
    }
    const bool seen = std::any_of(g.versions.begin(), g.versions.end(), [&](const Document* v) {
      return v->version_index == doc.version_index;
    });
    if (seen) {
      report.unmatched.push_back(unmatched(doc, "duplicate-version"));
      continue;
    }
    g.versions.push_back(&doc);
  }

  for (auto& [doi, group] : groups) {
    const auto pub = publisher_by_doi.find(doi);
    if (pub == publisher_by_doi.end()) {
      for (const auto* v : group.versions) report.unmatched.push_back(unmatched(*v, "no-published"));
      continue;
    }
    std::stable_sort(group.versions.begin(), group.versions.end(),
                     [](const Document* a, const Document* b) { return a->version_index < b->version_index; });
    MatchedPair pair;
    pair.doi = doi;
    for (const auto* v : group.versions) pair.preprint_versions.push_back(*v);
    pair.published = *pub->second;
    report.pairs.push_back(std::move(pair));
  }
  for (const auto& [doi, doc] : publisher_by_doi) {
    if (groups.find(doi) == groups.end()) report.unmatched.push_back(unmatched(*doc, "no-preprint"));
  }
  return report;
}

}  // namespace prepub
