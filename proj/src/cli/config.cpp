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


#include "prepub/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>

namespace prepub::cli {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(std::string_view(s).substr(start, pos - start)));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) throw ConfigError("invalid number for " + key + ": '" + value + "'");
  return out;
}

double parse_rate(const std::string& key, const std::string& value) {
  const auto v = parse_number<double>(key, value);
  if (!(v >= 0.0 && v <= 1.0)) throw ConfigError(key + " must be in [0, 1]");
  return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "yes" || value == "1") return true;
  if (value == "false" || value == "no" || value == "0") return false;
  throw ConfigError("invalid boolean for " + key + ": '" + value + "'");
}

Date parse_date(const std::string& key, const std::string& value) {
  auto d = parse_iso_date(value);
  if (!d) throw ConfigError("invalid date for " + key + ": '" + value + "'");
  return *d;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& value) {
  std::filesystem::path p(value);
  if (p.is_relative() && !base.empty()) p = base / p;
  return p;
}

}  // namespace

simcore::EditCosts parse_cost_model(const std::string& name) {
  if (name == "paper") return simcore::EditCosts::unit();
  if (name == "cited-tool") return simcore::EditCosts::indel_substitution();
  throw ConfigError("unknown cost model '" + name + "' (expected paper or cited-tool)");
}

std::vector<Section> parse_sections(const std::string& list) {
  std::vector<Section> picked;
  for (const auto& item : split(list, ',')) {
    auto s = parse_section(item);
    if (!s) throw ConfigError("unknown section '" + item + "'");
    if (std::find(picked.begin(), picked.end(), *s) == picked.end()) picked.push_back(*s);
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

void apply_setting(RunConfig& config, const std::string& key, const std::string& value,
                   const std::filesystem::path& base_dir) {
  auto& h = config.harvest;
  auto& s = config.synth;
  if (key == "store") {
    config.store_dir = resolve(base_dir, value);
  } else if (key == "transport") {
    if (value == "live") {
      config.transport = value;
    } else if (value.rfind("replay:", 0) == 0) {
      config.transport = "replay:" + resolve(base_dir, value.substr(7)).string();
    } else {
      throw ConfigError("transport must be 'live' or 'replay:<dir>'");
    }
  } else if (key.rfind("endpoint.", 0) == 0) {
    config.endpoints[key.substr(9)] = value;
  } else if (key == "stopwords") {
    config.stopword_file = resolve(base_dir, value);
  } else if (key == "dialects") {
    config.dialect_file = resolve(base_dir, value);
  } else if (key == "cost_model") {
    config.cost_model = parse_cost_model(value);
    config.cost_model_name = value;
  } else if (key == "day_ranges") {
    try {
      config.day_ranges = analysis::parse_day_ranges(value);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  } else if (key == "sections") {
    config.sections = parse_sections(value);
  } else if (key == "version_select") {
    auto v = analysis::parse_version_select(value);
    if (!v) throw ConfigError("version_select must be first or last");
    config.version_select = *v;
  } else if (key == "seed") {
    config.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "threads") {
    config.threads = parse_number<std::size_t>(key, value);
  } else if (key == "harvest.set") {
    h.set = value;
  } else if (key == "harvest.from") {
    h.from = parse_date(key, value);
  } else if (key == "harvest.until") {
    h.until = parse_date(key, value);
  } else if (key == "harvest.resume") {
    h.resume = parse_bool(key, value);
  } else if (key == "harvest.fulltext") {
    h.fulltext = parse_bool(key, value);
  } else if (key == "harvest.concurrency") {
    h.concurrency = std::max<std::size_t>(1, parse_number<std::size_t>(key, value));
  } else if (key == "politeness.interval_ms") {
    const auto ms = parse_number<long>(key, value);
    if (ms <= 0) throw ConfigError("politeness.interval_ms must be positive");
    h.interval = std::chrono::milliseconds(ms);
  } else if (key == "retry.max") {
    h.max_retries = parse_number<int>(key, value);
  } else if (key == "retry.backoff_ms") {
    h.backoff = std::chrono::milliseconds(parse_number<long>(key, value));
  } else if (key == "synth.pairs") {
    s.pairs = parse_number<std::size_t>(key, value);
  } else if (key == "synth.mutation_rate") {
    s.mutation_rate = parse_rate(key, value);
  } else if (key == "synth.date_offsets") {
    s.date_offsets.clear();
    for (const auto& item : split(value, ',')) s.date_offsets.push_back(parse_number<long>(key, item));
  } else if (key == "synth.max_versions") {
    s.max_versions = parse_number<int>(key, value);
    if (s.max_versions < 1) throw ConfigError("synth.max_versions must be at least 1");
  } else if (key == "synth.missing_body_rate") {
    s.missing_body_rate = parse_rate(key, value);
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

void load_config_file(RunConfig& config, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  const auto base = path.parent_path();
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto text = trim(line);
    if (text.empty() || text[0] == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": expected key = value");
    }
    try {
      apply_setting(config, trim(std::string_view(text).substr(0, eq)), trim(std::string_view(text).substr(eq + 1)),
                    base);
    } catch (const ConfigError& e) {
      throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

}  // namespace prepub::cli
