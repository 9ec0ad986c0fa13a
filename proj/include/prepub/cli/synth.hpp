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
#include <random>
#include <string>
#include <vector>

#include "prepub/cli/config.hpp"
#include "prepub/document.hpp"

namespace prepub::cli {

struct SynthCorpus {
  std::vector<Document> preprints;
  std::vector<Document> published;
};

/// Portable uniform draws on top of mt19937_64, whose output sequence is
/// fixed by the standard (the std distributions are not).
class SynthRng {
 public:
  explicit SynthRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform in [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi);
  bool chance(double p) { return unit() < p; }

 private:
  std::mt19937_64 engine_;
};

/// Replaces each code point with probability `rate` by a different
/// lowercase letter.
std::string mutate_text(const std::string& text, double rate, SynthRng& rng);

/// Generates `config.pairs` preprint/published pairs. The last preprint
/// version is the published text mutated at `mutation_rate`; each earlier
/// version adds one more round of mutation. The last version predates
/// publication by the cycled date offset.
SynthCorpus generate_corpus(const SynthConfig& config, std::uint64_t seed);

}  // namespace prepub::cli
