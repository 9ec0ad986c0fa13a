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


#include "prepub/cli/synth.hpp"

#include <array>
#include <chrono>
#include <cstdio>

#include "prepub/textprep.hpp"
#include "prepub/utf8.hpp"

namespace prepub::cli {
namespace {

constexpr std::array<std::string_view, 24> kSyllables{
    "ba", "ke", "lo", "mi", "nu", "ra", "si", "to", "ve", "zu", "qua", "dre",
    "pho", "tri", "gen", "sta", "mor", "lin", "cal", "dex", "pol", "vin", "ser", "tum"};

std::string pseudo_word(SynthRng& rng) {
  std::string w;
  const auto n = rng.between(1, 4);
  for (std::uint64_t i = 0; i < n; ++i) w += kSyllables[rng.between(0, kSyllables.size() - 1)];
  return w;
}

std::string sentence_text(SynthRng& rng, std::size_t words, const std::vector<std::string>& stopwords) {
  std::string out;
  for (std::size_t i = 0; i < words; ++i) {
    if (i) out += ' ';
    if (rng.chance(0.35)) {
      out += stopwords[rng.between(0, stopwords.size() - 1)];
    } else {
      out += pseudo_word(rng);
    }
  }
  return out;
}

std::string paragraphs(SynthRng& rng, std::size_t count, const std::vector<std::string>& stopwords) {
  std::string out;
  for (std::size_t p = 0; p < count; ++p) {
    if (p) out += '\n';
    const auto sentences = rng.between(3, 6);
    for (std::uint64_t s = 0; s < sentences; ++s) {
      if (s) out += ' ';
      out += sentence_text(rng, rng.between(8, 18), stopwords);
      out += '.';
    }
  }
  return out;
}

Date day_offset(const Date& d, long days) {
  return Date{std::chrono::sys_days(d) + std::chrono::days(days)};
}

}  // namespace

std::uint64_t SynthRng::between(std::uint64_t lo, std::uint64_t hi) {
  const std::uint64_t span = hi - lo + 1;
  if (span == 0) return engine_();
  // Rejection sampling keeps the draw unbiased.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return lo + x % span;
}

std::string mutate_text(const std::string& text, double rate, SynthRng& rng) {
  if (rate <= 0.0) return text;
  auto cps = utf8::decode(text);
  for (auto& cp : cps) {
    if (!rng.chance(rate)) continue;
    char32_t repl = U'a' + static_cast<char32_t>(rng.between(0, 24));
    if (repl >= cp && cp >= U'a' && cp <= U'z') ++repl;
    cp = repl;
  }
  return utf8::encode(cps);
}

SynthCorpus generate_corpus(const SynthConfig& config, std::uint64_t seed) {
  SynthRng rng(seed);
  // Mutations draw from their own stream so the base texts do not depend on
  // the mutation rate.
  SynthRng mutation_rng(seed ^ 0x9E3779B97F4A7C15ULL);
  const auto stopwords = textprep::StopwordSet::english().sorted_words();
  const Date epoch{std::chrono::year(2019), std::chrono::month(1), std::chrono::day(1)};

  SynthCorpus corpus;
  for (std::size_t i = 0; i < config.pairs; ++i) {
    char id[32];
    std::snprintf(id, sizeof id, "%05zu", i + 1);
    const std::string doi = std::string("10.5555/synth.") + id;

    Document pub;
    pub.source_id = std::string("synth-pub-") + id;
    pub.doi = doi;
    pub.source = Source::kPublisher;
    pub.provenance = Provenance::kStructuredXml;
    pub.version_date = day_offset(epoch, static_cast<long>(rng.between(400, 1400)));
    pub.sections.title = sentence_text(rng, rng.between(6, 14), stopwords);
    pub.sections.abstract = paragraphs(rng, 1, stopwords);
    pub.sections.body = paragraphs(rng, rng.between(3, 6), stopwords);

    const auto versions = static_cast<int>(rng.between(1, static_cast<std::uint64_t>(config.max_versions)));
    const long offset = config.date_offsets.empty() ? 0 : config.date_offsets[i % config.date_offsets.size()];

    // Versions are built newest first: each step back mutates the newer text.
    std::vector<Document> chain(static_cast<std::size_t>(versions));
    SectionSet current = pub.sections;
    Date date = day_offset(*pub.version_date, -offset);
    for (int v = versions; v >= 1; --v) {
      for (auto s : kAllSections) {
        auto& text = current.get(s);
        if (text) text = mutate_text(*text, config.mutation_rate, mutation_rng);
      }
      Document& d = chain[static_cast<std::size_t>(v - 1)];
      d.source_id = std::string("synth-pre-") + id;
      d.doi = doi;
      d.source = Source::kPreprint;
      d.provenance = Provenance::kSegmentedPdf;
      d.version_index = v;
      d.version_date = date;
      d.sections = current;
      date = day_offset(date, -static_cast<long>(rng.between(7, 90)));
    }
    if (rng.chance(config.missing_body_rate)) pub.sections.body.reset();

    for (auto& d : chain) corpus.preprints.push_back(std::move(d));
    corpus.published.push_back(std::move(pub));
  }
  return corpus;
}

}  // namespace prepub::cli
