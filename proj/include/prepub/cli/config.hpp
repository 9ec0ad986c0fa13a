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

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "prepub/analysis.hpp"
#include "prepub/document.hpp"
#include "prepub/simcore.hpp"

namespace prepub::cli {

struct SynthConfig {
  std::size_t pairs = 200;
  double mutation_rate = 0.05;
  /// Days between the last preprint version and publication, cycled over
  /// pairs. Negative values put the publisher first.
  std::vector<long> date_offsets{30};
  int max_versions = 3;
  /// Probability that a published record lacks a body.
  double missing_body_rate = 0.0;
};

struct HarvestConfig {
  std::optional<std::string> set;
  std::optional<Date> from;
  std::optional<Date> until;
  /// Continue from the last harvested datestamp when `from` is unset.
  bool resume = true;
  /// Resolve DOIs and download publisher full text after the metadata pass.
  bool fulltext = false;
  std::size_t concurrency = 4;
  std::chrono::milliseconds interval{1000};
  int max_retries = 3;
  std::chrono::milliseconds backoff{500};
};

struct RunConfig {
  std::filesystem::path store_dir = "store";
  /// Named service URLs: "oai", "crossref".
  std::map<std::string, std::string> endpoints;
  /// "live" or "replay:<fixture dir>".
  std::string transport = "live";
  std::optional<std::filesystem::path> stopword_file;
  std::optional<std::filesystem::path> dialect_file;
  std::string cost_model_name = "paper";
  simcore::EditCosts cost_model = simcore::EditCosts::unit();
  std::vector<analysis::DayRange> day_ranges = analysis::default_day_ranges();
  std::vector<Section> sections{kAllSections.begin(), kAllSections.end()};
  /// Unset: compare builds both tables and precedence uses the last version.
  std::optional<analysis::VersionSelect> version_select;
  std::uint64_t seed = 42;
  std::size_t threads = 0;
  SynthConfig synth;
  HarvestConfig harvest;
};

/// Invalid configuration value; maps to the usage exit code.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// "paper" -> {1,1,1}, "cited-tool" -> {1,1,2}.
simcore::EditCosts parse_cost_model(const std::string& name);
/// Comma-separated subset of title, abstract, body, in canonical order.
std::vector<Section> parse_sections(const std::string& list);

/// Applies one `key = value` setting. Throws ConfigError.
void apply_setting(RunConfig& config, const std::string& key, const std::string& value,
                   const std::filesystem::path& base_dir = {});

/// Reads `key = value` lines; lines starting with '#' are comments. Relative
/// paths resolve against the file's directory.
void load_config_file(RunConfig& config, const std::filesystem::path& path);

}  // namespace prepub::cli
