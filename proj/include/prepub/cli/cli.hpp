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

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "prepub/cli/config.hpp"

namespace prepub::cli {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitTransport = 2, kExitCorruption = 3 };

/// A stage's input is missing or empty; maps to the usage exit code.
class StageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct HarvestSummary {
  std::size_t fetched = 0;
  std::size_t skipped = 0;
  std::size_t deleted = 0;
  std::size_t pages = 0;
  std::size_t failures = 0;
  std::size_t fulltext = 0;
};

struct ImportOptions {
  std::vector<std::filesystem::path> inputs;
  /// "tei" for segmented preprints, "publisher" for structured articles.
  std::string kind;
  std::optional<std::filesystem::path> meta;
};

struct ImportSummary {
  std::size_t imported = 0;
  std::size_t failed = 0;
};

struct MatchSummary {
  std::size_t pairs = 0;
  std::map<std::string, std::size_t> unmatched;
  std::size_t conflicts = 0;
};

struct CompareSummary {
  std::size_t pairs = 0;
  std::size_t rows = 0;
  std::size_t null_sections = 0;
  std::size_t skipped = 0;
};

struct SynthSummary {
  std::size_t pairs = 0;
  std::size_t preprint_versions = 0;
};

HarvestSummary cmd_harvest(const RunConfig& config, std::ostream& log);
ImportSummary cmd_import(const RunConfig& config, const ImportOptions& options, std::ostream& log);
MatchSummary cmd_match(const RunConfig& config, std::ostream& log);
CompareSummary cmd_compare(const RunConfig& config, std::ostream& log);
void cmd_report(const RunConfig& config, std::ostream& out);
SynthSummary cmd_synth(const RunConfig& config, std::ostream& log);

/// Parses arguments (without the program name), runs one subcommand and
/// maps failures to exit codes.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace prepub::cli
