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

#include <array>
#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace prepub {

using Date = std::chrono::year_month_day;

/// Accepts "YYYY-MM-DD", optionally followed by a time part ("T..." or " ...").
std::optional<Date> parse_iso_date(std::string_view text);
std::string format_iso_date(const Date& date);
/// b - a in days.
long days_between(const Date& a, const Date& b);

enum class Source { kPreprint, kPublisher };
enum class Provenance { kStructuredXml, kSegmentedPdf };
enum class Section { kTitle, kAbstract, kBody };

inline constexpr std::array<Section, 3> kAllSections{Section::kTitle, Section::kAbstract,
                                                     Section::kBody};

std::string_view to_string(Source s);
std::string_view to_string(Provenance p);
std::string_view to_string(Section s);
std::optional<Source> parse_source(std::string_view s);
std::optional<Provenance> parse_provenance(std::string_view s);
std::optional<Section> parse_section(std::string_view s);

/// Title, abstract and body text. An absent section is not the same as an
/// empty one.
struct SectionSet {
  std::optional<std::string> title;
  std::optional<std::string> abstract;
  std::optional<std::string> body;

  const std::optional<std::string>& get(Section s) const;
  std::optional<std::string>& get(Section s);
  bool any() const { return title || abstract || body; }

  bool operator==(const SectionSet&) const = default;
};

/// One version of one article.
struct Document {
  std::string source_id;
  std::optional<std::string> doi;
  Source source = Source::kPreprint;
  int version_index = 1;
  std::optional<Date> version_date;
  SectionSet sections;
  Provenance provenance = Provenance::kStructuredXml;

  bool operator==(const Document&) const = default;
};

/// Checks the structural invariants of a Document and throws
/// std::invalid_argument describing the first violation.
void validate(const Document& doc);

}  // namespace prepub
