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


#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "prepub/simcore.hpp"
#include "prepub/utf8.hpp"

namespace prepub::simcore {
namespace {

textprep::TermCounts counts(const std::map<std::string, double>& m) {
  textprep::TermCounts c;
  for (const auto& [k, v] : m) c.add(k, static_cast<std::uint64_t>(v));
  return c;
}

TEST(Utf8, RoundTripsAndReplacesInvalidBytes) {
  const std::string text = "a\xE2\x80\x94" "b\xF0\x9F\x98\x80";
  EXPECT_EQ(utf8::decode(text), U"a—b\U0001F600");
  EXPECT_EQ(utf8::encode(utf8::decode(text)), text);
  EXPECT_EQ(utf8::length(text), 4u);
  EXPECT_EQ(utf8::decode("\xC3"), U"�");
  EXPECT_EQ(utf8::decode("\xC0\xAF"), U"�");
  EXPECT_EQ(utf8::decode("\xED\xA0\x80"), U"�");
}

TEST(Levenshtein, KnownValues) {
  EXPECT_EQ(levenshtein_distance("kitten", "sitting"), 3u);
  EXPECT_EQ(levenshtein_distance("", "abc"), 3u);
  EXPECT_EQ(levenshtein_distance("abc", ""), 3u);
  EXPECT_EQ(levenshtein_distance("flaw", "lawn"), 2u);
  EXPECT_EQ(levenshtein_distance("kitten", "sitting", EditCosts::indel_substitution()), 5u);
  EXPECT_DOUBLE_EQ(levenshtein_ratio("kitten", "sitting"), 10.0 / 13.0);
  EXPECT_DOUBLE_EQ(levenshtein_ratio("", ""), 1.0);
  EXPECT_DOUBLE_EQ(levenshtein_ratio("abc", "xyz", EditCosts::indel_substitution()), 0.0);
}

TEST(Levenshtein, DashesAreDistinctSingleCharacters) {
  EXPECT_EQ(levenshtein_distance("a—b", "a-b"), 1u);
  EXPECT_EQ(levenshtein_distance("—", ""), 1u);
}

TEST(Levenshtein, MatchesOracleAcrossBlockBoundaries) {
  std::mt19937_64 rng(7);
  const std::u32string small = U"ab";
  for (std::size_t len : {1u, 31u, 63u, 64u, 65u, 127u, 128u, 129u, 300u}) {
    for (int trial = 0; trial < 6; ++trial) {
      auto a = oracle::random_string(rng, len, trial % 2 ? small : oracle::mixed_alphabet());
      auto b = oracle::random_string(rng, len + 40, trial % 2 ? small : oracle::mixed_alphabet());
      EXPECT_EQ(levenshtein_distance(a, b), oracle::edit_distance(a, b)) << len;
      EXPECT_EQ(levenshtein_distance(b, a), oracle::edit_distance(b, a)) << len;
      EXPECT_EQ(levenshtein_distance(a, b, EditCosts::indel_substitution()), oracle::edit_distance(a, b, 1, 1, 2));
    }
  }
}

TEST(Levenshtein, AsymmetricCostsMatchOracle) {
  std::mt19937_64 rng(11);
  const EditCosts costs{2, 3, 4};
  for (int i = 0; i < 500; ++i) {
    const auto a = oracle::random_string(rng, 10);
    const auto b = oracle::random_string(rng, 10);
    ASSERT_EQ(levenshtein_distance(a, b, costs), oracle::edit_distance(a, b, 2, 3, 4));
    ASSERT_EQ(levenshtein_distance_dp(a, b, costs), oracle::edit_distance(a, b, 2, 3, 4));
  }
}

TEST(Levenshtein, TriangleInequality) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 2000; ++i) {
    const auto a = oracle::random_string(rng, 8);
    const auto b = oracle::random_string(rng, 8);
    const auto c = oracle::random_string(rng, 8);
    ASSERT_LE(levenshtein_distance(a, c), levenshtein_distance(a, b) + levenshtein_distance(b, c));
  }
}

TEST(LengthSimilarity, Values) {
  EXPECT_EQ(length_similarity(10, 5), 0.5);
  EXPECT_EQ(length_similarity(5, 10), 0.5);
  EXPECT_EQ(length_similarity(0, 0), 1.0);
  EXPECT_EQ(length_similarity(0, 3), 0.0);
  EXPECT_EQ(length_similarity("ab—", "abc"), 1.0);
}

TEST(SignedLengthDelta, SignFollowsPublishedMinusPreprint) {
  EXPECT_DOUBLE_EQ(signed_length_delta(5, 10).value, 0.5);
  EXPECT_DOUBLE_EQ(signed_length_delta(10, 5).value, -0.5);
  EXPECT_TRUE(signed_length_delta(0, 0).both_empty);
  EXPECT_FALSE(signed_length_delta(0, 1).both_empty);
}

TEST(CharSets, MatchSetOracle) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 3000; ++i) {
    const auto a = oracle::random_string(rng, 12);
    const auto b = oracle::random_string(rng, 12);
    ASSERT_NEAR(char_set_sorensen(a, b), oracle::sorensen(a, b), 1e-15);
    ASSERT_NEAR(char_set_jaccard(a, b), oracle::jaccard(a, b), 1e-15);
  }
  EXPECT_DOUBLE_EQ(char_set_sorensen("night", "nacht"), 0.6);
  EXPECT_DOUBLE_EQ(char_set_jaccard("night", "nacht"), 3.0 / 7.0);
}

TEST(MetricAxioms, SymmetryIdentityRange) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 2000; ++i) {
    const auto a = utf8::encode(oracle::random_string(rng, 12));
    const auto b = utf8::encode(oracle::random_string(rng, 12));
    for (auto f : {+[](std::string_view x, std::string_view y) { return length_similarity(x, y); },
                   +[](std::string_view x, std::string_view y) { return levenshtein_ratio(x, y); },
                   +[](std::string_view x, std::string_view y) { return char_set_sorensen(x, y); },
                   +[](std::string_view x, std::string_view y) { return char_set_jaccard(x, y); }}) {
      const double s = f(a, b);
      ASSERT_EQ(s, f(b, a));
      ASSERT_GE(s, 0.0);
      ASSERT_LE(s, 1.0);
      ASSERT_EQ(f(a, a), 1.0);
    }
  }
}

TEST(Cosine, MatchesDenseOracle) {
  EXPECT_NEAR(cosine_similarity(counts({{"a", 1}}), counts({{"a", 1}, {"b", 1}})), 0.70710678118654752, 1e-12);
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> n(0, 4);
  for (int i = 0; i < 1000; ++i) {
    std::map<std::string, double> a, b;
    for (const char* term : {"alpha", "beta", "gamma", "delta", "eps"}) {
      if (int k = n(rng)) a[term] = k;
      if (int k = n(rng)) b[term] = k;
    }
    if (a.empty() || b.empty()) continue;
    ASSERT_NEAR(cosine_similarity(counts(a), counts(b)), oracle::cosine(a, b), 1e-12);
  }
}

TEST(Cosine, EdgeCases) {
  EXPECT_EQ(cosine_similarity(counts({}), counts({})), 1.0);
  EXPECT_EQ(cosine_similarity(counts({{"a", 2}}), counts({})), 0.0);
  EXPECT_EQ(cosine_similarity(counts({{"a", 2}}), counts({{"b", 2}})), 0.0);
  const auto c = counts({{"x", 3}, {"y", 7}, {"z", 1}});
  EXPECT_EQ(cosine_similarity(c, c), 1.0);
}

TEST(Cosine, ScaleInvariant) {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> n(0, 9);
  for (int i = 0; i < 500; ++i) {
    std::map<std::string, double> a, b;
    for (const char* term : {"p", "q", "r", "s", "t", "u"}) {
      if (int k = n(rng)) a[term] = k;
      if (int k = n(rng)) b[term] = k;
    }
    if (a.empty() || b.empty()) continue;
    const double base = cosine_similarity(counts(a), counts(b));
    for (int k : {2, 3, 10}) {
      auto scaled = a;
      for (auto& [term, v] : scaled) v *= k;
      ASSERT_NEAR(cosine_similarity(counts(scaled), counts(b)), base, 1e-12);
    }
  }
}

}  // namespace
}  // namespace prepub::simcore
