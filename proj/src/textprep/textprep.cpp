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

#include <unicode/uchar.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "prepub/textprep.hpp"
#include "prepub/utf8.hpp"

namespace prepub::textprep {

TokenStream tokenize(std::string_view text) {
  TokenStream tokens;
  std::string current;
  for (char32_t cp : utf8::decode(text)) {
    const auto c = static_cast<UChar32>(cp);
    if (u_isalnum(c)) {
      utf8::append(current, static_cast<char32_t>(u_tolower(c)));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

namespace {

constexpr std::string_view kEnglishStopwords =
#include "english_stopwords.inc"
    ;

std::string lowercase(std::string_view word) {
  std::string out;
  for (char32_t cp : utf8::decode(word)) {
    utf8::append(out, static_cast<char32_t>(u_tolower(static_cast<UChar32>(cp))));
  }
  return out;
}

std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n\f\v";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

}  // namespace

StopwordSet::StopwordSet(std::vector<std::string> words) {
  for (auto& w : words) {
    if (!w.empty()) words_.insert(lowercase(w));
  }
}

const StopwordSet& StopwordSet::english() {
  static const StopwordSet set = [] {
    std::istringstream in{std::string(kEnglishStopwords)};
    return parse(in);
  }();
  return set;
}

StopwordSet StopwordSet::parse(std::istream& in) {
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    const auto word = trim(line);
    if (word.empty() || word.front() == '#') continue;
    words.emplace_back(word);
  }
  return StopwordSet(std::move(words));
}

StopwordSet StopwordSet::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open stopword file " + path.string());
  return parse(in);
}

bool StopwordSet::contains(std::string_view word) const {
  return words_.find(word) != words_.end();
}

std::vector<std::string> StopwordSet::sorted_words() const {
  std::vector<std::string> out(words_.begin(), words_.end());
  std::sort(out.begin(), out.end());
  return out;
}

TokenStream remove_stopwords(const TokenStream& tokens, const StopwordSet& stopwords) {
  TokenStream out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) {
    if (!stopwords.contains(t)) out.push_back(t);
  }
  return out;
}

void TermCounts::add(std::string_view term, std::uint64_t n) {
  if (n == 0) return;
  auto it = entries_.find(term);
  if (it == entries_.end()) {
    entries_.emplace(std::string(term), n);
  } else {
    it->second += n;
  }
  total_ += n;
}

std::uint64_t TermCounts::count(std::string_view term) const {
  const auto it = entries_.find(term);
  return it == entries_.end() ? 0 : it->second;
}

TermCounts term_counts(const TokenStream& tokens) {
  TermCounts counts;
  for (const auto& t : tokens) counts.add(t);
  return counts;
}

TokenStream TermPipeline::stemmed_tokens(std::string_view text) const {
  TokenStream out;
  for (const auto& token : remove_stopwords(tokenize(text), stopwords_)) {
    auto stem = porter_stem(token);
    if (!stem.empty()) out.push_back(std::move(stem));
  }
  return out;
}

TermCounts TermPipeline::counts(std::string_view text) const {
  return term_counts(stemmed_tokens(text));
}

}  // namespace prepub::textprep
