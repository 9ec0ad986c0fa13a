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

#include <cstdint>
#include <string>
#include <string_view>

#include "prepub/textprep.hpp"

namespace prepub::simcore {

/// Weights of the three edit operations. All must be positive.
struct EditCosts {
  std::uint32_t insert = 1;
  std::uint32_t remove = 1;
  std::uint32_t substitute = 1;

  /// Plain insert/delete/substitute counting.
  static constexpr EditCosts unit() { return {1, 1, 1}; }
  /// Substitution weighted 2, as in the common python-Levenshtein ratio.
  static constexpr EditCosts indel_substitution() { return {1, 1, 2}; }

  bool operator==(const EditCosts&) const = default;
};

/// Minimal weighted cost turning `a` into `b`, over code points.
/// Runs in O(min(|a|,|b|)) memory. Unit costs and {1,1,2} use bit-parallel
/// kernels; any other cost model falls back to a rolling-row DP.
std::uint64_t levenshtein_distance(std::u32string_view a, std::u32string_view b,
                                   EditCosts costs = EditCosts::unit());
std::uint64_t levenshtein_distance(std::string_view a, std::string_view b,
                                   EditCosts costs = EditCosts::unit());

/// The DP kernel on its own, for any cost model.
std::uint64_t levenshtein_distance_dp(std::u32string_view a, std::u32string_view b,
                                      EditCosts costs);

/// (|a| + |b| - distance) / (|a| + |b|), clamped to [0,1]; 1 when both are
/// empty.
double levenshtein_ratio(std::u32string_view a, std::u32string_view b,
                         EditCosts costs = EditCosts::unit());
double levenshtein_ratio(std::string_view a, std::string_view b,
                         EditCosts costs = EditCosts::unit());

/// 1 - |la - lb| / max(la, lb); 1 when both are zero.
double length_similarity(std::size_t len_a, std::size_t len_b);
double length_similarity(std::string_view a, std::string_view b);

struct SignedLengthDelta {
  double value = 0.0;
  /// Set when both inputs were empty and the delta was defined as 0.
  bool both_empty = false;
};

/// (len(published) - len(preprint)) / max(len(preprint), len(published)).
SignedLengthDelta signed_length_delta(std::size_t preprint_len, std::size_t published_len);
SignedLengthDelta signed_length_delta(std::string_view preprint, std::string_view published);

/// Sorensen-Dice index over the sets of distinct code points.
double char_set_sorensen(std::u32string_view a, std::u32string_view b);
double char_set_sorensen(std::string_view a, std::string_view b);

/// Jaccard index over the sets of distinct code points.
double char_set_jaccard(std::u32string_view a, std::u32string_view b);
double char_set_jaccard(std::string_view a, std::string_view b);

/// Cosine of two raw term-count vectors. 0 when exactly one is empty, 1 when
/// both are.
double cosine_similarity(const textprep::TermCounts& a, const textprep::TermCounts& b);

}  // namespace prepub::simcore
