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
#include <filesystem>
#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace prepub::textprep {

/// Ordered lowercase word tokens.
using TokenStream = std::vector<std::string>;

/// Splits on every maximal run of non-alphanumeric code points and applies
/// Unicode simple lowercase to each token. Numerals are kept.
TokenStream tokenize(std::string_view text);

/// A set of lowercase stopwords.
class StopwordSet {
 public:
  StopwordSet() = default;
  explicit StopwordSet(std::vector<std::string> words);

  /// The bundled 318-word English list.
  static const StopwordSet& english();

  /// One word per line, UTF-8; blank lines and lines starting with '#' are
  /// skipped. Words are lowercased on load.
  static StopwordSet parse(std::istream& in);
  static StopwordSet load(const std::filesystem::path& path);

  bool contains(std::string_view word) const;
  std::size_t size() const noexcept { return words_.size(); }
  std::vector<std::string> sorted_words() const;

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
      return std::hash<std::string_view>{}(s);
    }
  };
  std::unordered_set<std::string, Hash, std::equal_to<>> words_;
};

TokenStream remove_stopwords(const TokenStream& tokens, const StopwordSet& stopwords);

/// Porter's suffix-stripping stemmer, matching the output of his reference
/// C implementation. Characters outside a-z are treated as consonants.
std::string porter_stem(std::string_view word);

/// Stemmed term -> occurrence count. Every count is positive.
class TermCounts {
 public:
  using Map = std::map<std::string, std::uint64_t, std::less<>>;

  TermCounts() = default;

  void add(std::string_view term, std::uint64_t n = 1);
  const Map& entries() const noexcept { return entries_; }
  std::uint64_t count(std::string_view term) const;
  std::uint64_t total() const noexcept { return total_; }
  bool empty() const noexcept { return entries_.empty(); }
  std::size_t distinct() const noexcept { return entries_.size(); }

  bool operator==(const TermCounts& other) const = default;

 private:
  Map entries_;
  std::uint64_t total_ = 0;
};

TermCounts term_counts(const TokenStream& tokens);

/// The full chain feeding cosine similarity:
/// tokenize -> remove stopwords -> stem -> count. Tokens whose stem is empty
/// are dropped.
class TermPipeline {
 public:
  TermPipeline() : stopwords_(StopwordSet::english()) {}
  explicit TermPipeline(StopwordSet stopwords) : stopwords_(std::move(stopwords)) {}

  TokenStream stemmed_tokens(std::string_view text) const;
  TermCounts counts(std::string_view text) const;
  const StopwordSet& stopwords() const noexcept { return stopwords_; }

 private:
  StopwordSet stopwords_;
};

}  // namespace prepub::textprep
