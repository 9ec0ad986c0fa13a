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

#include <fstream>
#include <sstream>

#include "prepub/textprep.hpp"

namespace prepub::textprep {
namespace {

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

TEST(Porter, ReferenceVocabulary) {
  const auto words = read_lines(PREPUB_TEST_DATA_DIR "/porter/voc.txt");
  const auto expected = read_lines(PREPUB_TEST_DATA_DIR "/porter/output.txt");
  ASSERT_GT(words.size(), 20000u);
  ASSERT_EQ(words.size(), expected.size());
  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (porter_stem(words[i]) != expected[i]) {
      if (++mismatches <= 10) ADD_FAILURE() << words[i] << " -> " << porter_stem(words[i]) << ", want " << expected[i];
    }
  }
  EXPECT_EQ(mismatches, 0u);
}

TEST(Porter, NeverLengthensAndKeepsShortWords) {
  for (const auto& w : read_lines(PREPUB_TEST_DATA_DIR "/porter/voc.txt")) {
    ASSERT_LE(porter_stem(w).size(), w.size()) << w;
  }
  EXPECT_EQ(porter_stem("a"), "a");
  EXPECT_EQ(porter_stem("is"), "is");
  EXPECT_EQ(porter_stem(""), "");
}

TEST(Porter, ClassicExamples) {
  EXPECT_EQ(porter_stem("caresses"), "caress");
  EXPECT_EQ(porter_stem("ponies"), "poni");
  EXPECT_EQ(porter_stem("relational"), "relat");
  EXPECT_EQ(porter_stem("hopping"), "hop");
  EXPECT_EQ(porter_stem("generalizations"), "gener");
  EXPECT_EQ(porter_stem("possibly"), "possibl");
}

TEST(Tokenize, SplitsOnNonAlphanumericAndLowercases) {
  const TokenStream want{"the", "quick", "brown", "fox", "h2o", "at", "300k", "école"};
  EXPECT_EQ(tokenize("The QUICK brown—fox: H2O at 300K, École!"), want);
  EXPECT_TRUE(tokenize("  --- ... ").empty());
  EXPECT_EQ(tokenize("state-of-the-art"), (TokenStream{"state", "of", "the", "art"}));
}

TEST(Tokenize, TokensNeverContainSeparators) {
  const std::string text = "Mixed, text; with\ttabs\nand — dashes (and) [brackets] 3.14 über";
  for (const auto& t : tokenize(text)) {
    ASSERT_FALSE(t.empty());
    for (char c : t) {
      ASSERT_FALSE(c == ' ' || c == ',' || c == '-' || c == '.' || c == '(' || c == '\t');
      ASSERT_FALSE(c >= 'A' && c <= 'Z');
    }
  }
}

TEST(Stopwords, BundledEnglishList) {
  const auto& sw = StopwordSet::english();
  EXPECT_EQ(sw.size(), 318u);
  EXPECT_TRUE(sw.contains("the"));
  EXPECT_TRUE(sw.contains("whereafter"));
  EXPECT_FALSE(sw.contains("protein"));
  const auto words = sw.sorted_words();
  EXPECT_TRUE(std::is_sorted(words.begin(), words.end()));
}

TEST(Stopwords, ParseSkipsCommentsAndBlankLines) {
  std::istringstream in("# comment\nFoo\n\n  bar  \n");
  const auto sw = StopwordSet::parse(in);
  EXPECT_EQ(sw.size(), 2u);
  EXPECT_TRUE(sw.contains("foo"));
  EXPECT_TRUE(sw.contains("bar"));
}

TEST(Stopwords, Removal) {
  const TokenStream tokens{"the", "cat", "sat", "on", "the", "mat"};
  EXPECT_EQ(remove_stopwords(tokens, StopwordSet::english()), (TokenStream{"cat", "sat", "mat"}));
}

TEST(TermCounts, CountsAndTotals) {
  const auto c = term_counts({"a", "b", "a"});
  EXPECT_EQ(c.count("a"), 2u);
  EXPECT_EQ(c.count("b"), 1u);
  EXPECT_EQ(c.count("z"), 0u);
  EXPECT_EQ(c.total(), 3u);
  EXPECT_EQ(c.distinct(), 2u);
}

TEST(TermPipeline, StopsThenStems) {
  const TermPipeline p;
  EXPECT_EQ(p.stemmed_tokens("The connections were connecting"), (TokenStream{"connect", "connect"}));
  EXPECT_EQ(p.counts("Running runs, the runner ran").count("run"), 2u);
}

}  // namespace
}  // namespace prepub::textprep
