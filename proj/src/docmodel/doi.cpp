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

#include "prepub/doi.hpp"

#include <array>
#include <cctype>

#include "prepub/errors.hpp"

namespace prepub {
namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

bool starts_with_icase(std::string_view s, std::string_view prefix) {
  if (s.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(s[i])) != prefix[i]) return false;
  }
  return true;
}

constexpr std::array<std::string_view, 8> kPrefixes{
    "https://doi.org/", "http://doi.org/", "https://dx.doi.org/", "http://dx.doi.org/",
    "doi.org/",         "dx.doi.org/",     "doi:",                "info:doi/"};

bool well_formed(std::string_view doi) {
  if (!doi.starts_with("10.")) return false;
  const auto slash = doi.find('/');
  if (slash == std::string_view::npos || slash == 3 || slash + 1 >= doi.size()) return false;
  // Registrant code: digits, optionally dot-separated subdivisions.
  std::string_view registrant = doi.substr(3, slash - 3);
  if (registrant.front() == '.' || registrant.back() == '.') return false;
  for (char c : registrant) {
    if (!std::isdigit(static_cast<unsigned char>(c)) && c != '.') return false;
  }
  for (char c : doi.substr(slash + 1)) {
    if (is_space(c)) return false;
  }
  return true;
}

}  // namespace

std::optional<std::string> try_normalize_doi(std::string_view raw) {
  std::string_view s = trim(raw);
  for (auto prefix : kPrefixes) {
    if (starts_with_icase(s, prefix)) {
      s = trim(s.substr(prefix.size()));
      break;
    }
  }
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (!well_formed(out)) return std::nullopt;
  return out;
}

std::string normalize_doi(std::string_view raw) {
  auto doi = try_normalize_doi(raw);
  if (!doi) throw MalformedDoi(std::string(raw));
  return *std::move(doi);
}

}  // namespace prepub
