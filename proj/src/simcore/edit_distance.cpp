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
#include <bit>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "prepub/simcore.hpp"
#include "prepub/utf8.hpp"

namespace prepub::simcore {
namespace {

using Word = std::uint64_t;
constexpr int kWordBits = 64;

// Per-symbol match masks for a pattern split into 64-bit blocks.
class PatternMasks {
 public:
  explicit PatternMasks(std::u32string_view pattern)
      : blocks_((pattern.size() + kWordBits - 1) / kWordBits) {
    for (std::size_t i = 0; i < pattern.size(); ++i) {
      auto [it, inserted] = index_.try_emplace(pattern[i], index_.size());
      if (inserted) masks_.resize(masks_.size() + blocks_, 0);
      masks_[it->second * blocks_ + i / kWordBits] |= Word{1} << (i % kWordBits);
    }
    zeros_.assign(blocks_, 0);
  }

  std::size_t blocks() const noexcept { return blocks_; }

  const Word* lookup(char32_t c) const {
    const auto it = index_.find(c);
    return it == index_.end() ? zeros_.data() : masks_.data() + it->second * blocks_;
  }

 private:
  std::size_t blocks_;
  std::unordered_map<char32_t, std::size_t> index_;
  std::vector<Word> masks_;
  std::vector<Word> zeros_;
};

// Myers' bit-vector algorithm, blocked form. Vertical delta vectors track one
// text column; the horizontal delta leaving the bottom row updates the score.
std::uint64_t unit_distance(std::u32string_view pattern, std::u32string_view text) {
  const PatternMasks peq(pattern);
  const std::size_t blocks = peq.blocks();
  std::vector<Word> pv(blocks, ~Word{0});
  std::vector<Word> mv(blocks, 0);
  const int last_bit = static_cast<int>((pattern.size() - 1) % kWordBits);
  std::uint64_t score = pattern.size();

  for (char32_t c : text) {
    const Word* eq_row = peq.lookup(c);
    int hin = 1;
    for (std::size_t b = 0; b < blocks; ++b) {
      const int out_bit = b + 1 == blocks ? last_bit : kWordBits - 1;
      Word eq = eq_row[b];
      const Word p = pv[b];
      const Word m = mv[b];
      const Word hin_neg = hin < 0 ? 1 : 0;
      const Word xv = eq | m;
      eq |= hin_neg;
      const Word xh = (((eq & p) + p) ^ p) | eq;
      Word ph = m | ~(xh | p);
      Word mh = p & xh;
      const int hout = static_cast<int>((ph >> out_bit) & 1) - static_cast<int>((mh >> out_bit) & 1);
      ph <<= 1;
      mh <<= 1;
      mh |= hin_neg;
      ph |= hin > 0 ? 1 : 0;
      pv[b] = mh | ~(xv | ph);
      mv[b] = ph & xv;
      hin = hout;
    }
    score += hin;
  }
  return score;
}

// Bit-parallel longest common subsequence (Allison-Dix / Hyyro). With
// substitution weighted as delete+insert, distance = n + m - 2 * LCS.
std::uint64_t lcs_length(std::u32string_view pattern, std::u32string_view text) {
  const PatternMasks peq(pattern);
  const std::size_t blocks = peq.blocks();
  std::vector<Word> v(blocks, ~Word{0});
  for (char32_t c : text) {
    const Word* eq_row = peq.lookup(c);
    Word carry = 0;
    for (std::size_t b = 0; b < blocks; ++b) {
      const Word x = v[b];
      const Word u = x & eq_row[b];
      const Word sum1 = x + u;
      const Word c1 = sum1 < x ? 1 : 0;
      const Word sum = sum1 + carry;
      const Word c2 = sum < sum1 ? 1 : 0;
      carry = c1 | c2;
      v[b] = sum | (x - u);
    }
  }
  std::uint64_t zeros = 0;
  for (std::size_t b = 0; b < blocks; ++b) {
    Word mask = ~Word{0};
    if (b + 1 == blocks && pattern.size() % kWordBits != 0) {
      mask = (Word{1} << (pattern.size() % kWordBits)) - 1;
    }
    zeros += static_cast<std::uint64_t>(std::popcount(~v[b] & mask));
  }
  return zeros;
}

}  // namespace

std::uint64_t levenshtein_distance_dp(std::u32string_view a, std::u32string_view b,
                                      EditCosts costs) {
  if (costs.insert == 0 || costs.remove == 0 || costs.substitute == 0) {
    throw std::invalid_argument("edit costs must be positive");
  }
  // Keep the row over the shorter string. Transposing swaps the roles of
  // insertion and deletion.
  std::uint64_t ins = costs.insert;
  std::uint64_t del = costs.remove;
  if (b.size() > a.size()) {
    std::swap(a, b);
    std::swap(ins, del);
  }
  // row[j] = cost of turning a[0..i) into b[0..j)
  std::vector<std::uint64_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j * ins;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::uint64_t diag = row[0];
    row[0] = i * del;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::uint64_t up = row[j];
      const std::uint64_t sub = diag + (a[i - 1] == b[j - 1] ? 0 : costs.substitute);
      row[j] = std::min({sub, up + del, row[j - 1] + ins});
      diag = up;
    }
  }
  return row[b.size()];
}

std::uint64_t levenshtein_distance(std::u32string_view a, std::u32string_view b, EditCosts costs) {
  const bool unit = costs == EditCosts::unit();
  if (unit || costs == EditCosts::indel_substitution()) {
    // Both cost models are symmetric, so the shorter string can be the pattern.
    if (b.size() > a.size()) std::swap(a, b);
    if (b.empty()) return a.size();
    if (unit) return unit_distance(b, a);
    return a.size() + b.size() - 2 * lcs_length(b, a);
  }
  return levenshtein_distance_dp(a, b, costs);
}

std::uint64_t levenshtein_distance(std::string_view a, std::string_view b, EditCosts costs) {
  return levenshtein_distance(utf8::decode(a), utf8::decode(b), costs);
}

}  // namespace prepub::simcore
