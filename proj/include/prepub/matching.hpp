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

#include <span>
#include <string>
#include <vector>

#include "prepub/document.hpp"

namespace prepub {

/// Preprint versions and the published version of one article, joined on
/// normalized DOI.
struct MatchedPair {
  std::string doi;
  /// Non-empty, strictly ascending version_index.
  std::vector<Document> preprint_versions;
  Document published;

  const Document& first() const { return preprint_versions.front(); }
  const Document& last() const { return preprint_versions.back(); }
};

/// A document that did not end up in any pair.
struct UnmatchedEntry {
  std::string source_id;
  std::optional<std::string> doi;
  Source source = Source::kPreprint;
  int version_index = 1;
  /// One of: no-doi, no-preprint, no-published, duplicate-published,
  /// duplicate-preprint, duplicate-version.
  std::string reason;
};

/// Two records competing for the same slot; the first in input order is kept.
struct MatchConflict {
  std::string doi;
  Source source = Source::kPublisher;
  std::string kept_source_id;
  std::string dropped_source_id;
};

struct MatchReport {
  /// Sorted by DOI.
  std::vector<MatchedPair> pairs;
  std::vector<UnmatchedEntry> unmatched;
  std::vector<MatchConflict> conflicts;
};

/// Joins preprint versions to published records by their (already
/// normalized) DOI. Every input document lands either in a pair or in the
/// unmatched list.
MatchReport match_pairs(std::span<const Document> preprints, std::span<const Document> published);

}  // namespace prepub
