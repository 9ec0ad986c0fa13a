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
#include <cmath>
#include <vector>

#include "prepub/simcore.hpp"
#include "prepub/utf8.hpp"

namespace prepub::simcore {
namespace {

double clamp_unit(double v) { return std::clamp(v, 0.0, 1.0); }

std::vector<char32_t> unique_chars(std::u32string_view s) {
  std::vector<char32_t> out(s.begin(), s.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct SetSizes {
  std::size_t a = 0;
  std::size_t b = 0;
  std::size_t common = 0;
};

SetSizes char_set_sizes(std::u32string_view a, std::u32string_view b) {
  const auto ua = unique_chars(a);
  const auto ub = unique_chars(b);
  SetSizes sizes{ua.size(), ub.size(), 0};
  auto ia = ua.begin();
  auto ib = ub.begin();
  while (ia != ua.end() && ib != ub.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++sizes.common;
      ++ia;
      ++ib;
    }
  }
  return sizes;
}

}  // namespace

double levenshtein_ratio(std::u32string_view a, std::u32string_view b, EditCosts costs) {
  const std::uint64_t total = a.size() + b.size();
  if (total == 0) return 1.0;
  const std::uint64_t distance = levenshtein_distance(a, b, costs);
  if (distance >= total) return 0.0;
  return clamp_unit(static_cast<double>(total - distance) / static_cast<double>(total));
}

double levenshtein_ratio(std::string_view a, std::string_view b, EditCosts costs) {
  return levenshtein_ratio(utf8::decode(a), utf8::decode(b), costs);
}

double length_similarity(std::size_t len_a, std::size_t len_b) {
  const auto longer = std::max(len_a, len_b);
  if (longer == 0) return 1.0;
  const auto diff = longer - std::min(len_a, len_b);
  return clamp_unit(1.0 - static_cast<double>(diff) / static_cast<double>(longer));
}

double length_similarity(std::string_view a, std::string_view b) {
  return length_similarity(utf8::length(a), utf8::length(b));
}

SignedLengthDelta signed_length_delta(std::size_t preprint_len, std::size_t published_len) {
  const auto longer = std::max(preprint_len, published_len);
  if (longer == 0) return {0.0, true};
  const double diff = static_cast<double>(published_len) - static_cast<double>(preprint_len);
  return {diff / static_cast<double>(longer), false};
}

SignedLengthDelta signed_length_delta(std::string_view preprint, std::string_view published) {
  return signed_length_delta(utf8::length(preprint), utf8::length(published));
}

double char_set_sorensen(std::u32string_view a, std::u32string_view b) {
  const auto s = char_set_sizes(a, b);
  if (s.a + s.b == 0) return 1.0;
  return clamp_unit(2.0 * static_cast<double>(s.common) / static_cast<double>(s.a + s.b));
}

double char_set_sorensen(std::string_view a, std::string_view b) {
  return char_set_sorensen(utf8::decode(a), utf8::decode(b));
}

double char_set_jaccard(std::u32string_view a, std::u32string_view b) {
  const auto s = char_set_sizes(a, b);
  const auto uni = s.a + s.b - s.common;
  if (uni == 0) return 1.0;
  return clamp_unit(static_cast<double>(s.common) / static_cast<double>(uni));
}

double char_set_jaccard(std::string_view a, std::string_view b) {
  return char_set_jaccard(utf8::decode(a), utf8::decode(b));
}

double cosine_similarity(const textprep::TermCounts& a, const textprep::TermCounts& b) {
  if (a.empty() && b.empty()) return 1.0;
  if (a.empty() || b.empty()) return 0.0;
  double dot = 0.0;
  double norm_a = 0.0;
  double norm_b = 0.0;
  for (const auto& [term, n] : a.entries()) norm_a += static_cast<double>(n) * static_cast<double>(n);
  for (const auto& [term, n] : b.entries()) norm_b += static_cast<double>(n) * static_cast<double>(n);
  auto ia = a.entries().begin();
  auto ib = b.entries().begin();
  while (ia != a.entries().end() && ib != b.entries().end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      dot += static_cast<double>(ia->second) * static_cast<double>(ib->second);
      ++ia;
      ++ib;
    }
  }
  if (dot == 0.0) return 0.0;
  // Identical vectors give exactly 1 despite rounding in the norms.
  if (a == b) return 1.0;
  return clamp_unit(dot / std::sqrt(norm_a * norm_b));
}

}  // namespace prepub::simcore
