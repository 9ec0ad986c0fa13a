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

#include "prepub/document.hpp"

#include <charconv>
#include <cstdio>
#include <stdexcept>

namespace prepub {

std::optional<Date> parse_iso_date(std::string_view text) {
  if (text.size() < 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  if (text.size() > 10 && text[10] != 'T' && text[10] != ' ') return std::nullopt;
  int y = 0;
  unsigned m = 0;
  unsigned d = 0;
  auto parse = [&](std::size_t pos, std::size_t len, auto& out) {
    const char* b = text.data() + pos;
    const auto r = std::from_chars(b, b + len, out);
    return r.ec == std::errc() && r.ptr == b + len;
  };
  if (!parse(0, 4, y) || !parse(5, 2, m) || !parse(8, 2, d)) return std::nullopt;
  const Date date{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
  if (!date.ok()) return std::nullopt;
  return date;
}

std::string format_iso_date(const Date& date) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(date.year()),
                static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
  return buf;
}

long days_between(const Date& a, const Date& b) {
  return (std::chrono::sys_days{b} - std::chrono::sys_days{a}).count();
}

std::string_view to_string(Source s) {
  return s == Source::kPreprint ? "preprint-repo" : "publisher";
}

std::string_view to_string(Provenance p) {
  return p == Provenance::kStructuredXml ? "structured-xml" : "segmented-pdf";
}

std::string_view to_string(Section s) {
  switch (s) {
    case Section::kTitle:
      return "title";
    case Section::kAbstract:
      return "abstract";
    case Section::kBody:
      return "body";
  }
  return "?";
}

std::optional<Source> parse_source(std::string_view s) {
  if (s == "preprint-repo") return Source::kPreprint;
  if (s == "publisher") return Source::kPublisher;
  return std::nullopt;
}

std::optional<Provenance> parse_provenance(std::string_view s) {
  if (s == "structured-xml") return Provenance::kStructuredXml;
  if (s == "segmented-pdf") return Provenance::kSegmentedPdf;
  return std::nullopt;
}

std::optional<Section> parse_section(std::string_view s) {
  for (Section sec : kAllSections) {
    if (to_string(sec) == s) return sec;
  }
  return std::nullopt;
}

const std::optional<std::string>& SectionSet::get(Section s) const {
  switch (s) {
    case Section::kTitle:
      return title;
    case Section::kAbstract:
      return abstract;
    case Section::kBody:
      break;
  }
  return body;
}

std::optional<std::string>& SectionSet::get(Section s) {
  return const_cast<std::optional<std::string>&>(std::as_const(*this).get(s));
}

void validate(const Document& doc) {
  if (doc.source_id.empty()) throw std::invalid_argument("document has an empty source_id");
  if (doc.version_index < 1) {
    throw std::invalid_argument(doc.source_id + ": version_index must be >= 1");
  }
  if (doc.source == Source::kPublisher && doc.version_index != 1) {
    throw std::invalid_argument(doc.source_id + ": publisher documents have version_index 1");
  }
  if (!doc.sections.any()) throw std::invalid_argument(doc.source_id + ": no sections present");
}

}  // namespace prepub
