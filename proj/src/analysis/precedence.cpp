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

#include <charconv>
#include <stdexcept>

#include "prepub/analysis.hpp"

namespace prepub::analysis {

std::string_view to_string(Venue v) {
  switch (v) {
    case Venue::kPreprint:
      return "preprint";
    case Venue::kPublisher:
      return "publisher";
    case Venue::kSameDay:
      return "same-day";
  }
  return "?";
}

std::string DayRange::label() const {
  if (!hi) return std::to_string(lo) + "+";
  if (*hi == lo) return std::to_string(lo);
  return std::to_string(lo) + "-" + std::to_string(*hi);
}

namespace {

long parse_long(std::string_view s, std::string_view spec) {
  long v = 0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size() || v < 0) {
    throw std::invalid_argument("bad day range '" + std::string(spec) + "'");
  }
  return v;
}

}  // namespace

std::vector<DayRange> parse_day_ranges(std::string_view spec) {
  std::vector<DayRange> out;
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    auto comma = spec.find(',', pos);
    if (comma == std::string_view::npos) comma = spec.size();
    std::string_view item = spec.substr(pos, comma - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (item.empty()) throw std::invalid_argument("empty item in day ranges '" + std::string(spec) + "'");
    DayRange r;
    if (item.back() == '+') {
      r.lo = parse_long(item.substr(0, item.size() - 1), spec);
    } else if (const auto dash = item.find('-'); dash != std::string_view::npos) {
      r.lo = parse_long(item.substr(0, dash), spec);
      r.hi = parse_long(item.substr(dash + 1), spec);
    } else {
      r.lo = parse_long(item, spec);
      r.hi = r.lo;
    }
    out.push_back(r);
    pos = comma + 1;
  }
  if (out.empty() || out.front().lo != 0) throw std::invalid_argument("day ranges must start at 0");
  for (std::size_t i = 0; i < out.size(); ++i) {
    const bool last = i + 1 == out.size();
    if (!out[i].hi && !last) throw std::invalid_argument("only the last day range may be open-ended");
    if (out[i].hi && *out[i].hi < out[i].lo) throw std::invalid_argument("day range with hi < lo");
    if (!last && out[i + 1].lo != *out[i].hi + 1) throw std::invalid_argument("day ranges must be contiguous");
  }
  if (out.back().hi) throw std::invalid_argument("the last day range must be open-ended (e.g. 361+)");
  return out;
}

std::vector<DayRange> default_day_ranges() { return parse_day_ranges("0,1-90,91-180,181-270,271-360,361+"); }

PrecedenceReport precedence(std::span<const MatchedPair> pairs, VersionSelect which,
                            std::span<const DayRange> ranges) {
  if (ranges.empty()) throw std::invalid_argument("no day ranges");
  PrecedenceReport report;
  for (const auto& r : ranges) report.rows.push_back({r, 0, 0, 0});

  for (const auto& pair : pairs) {
    const Document& pre = which == VersionSelect::kFirst ? pair.first() : pair.last();
    if (!pre.version_date || !pair.published.version_date) {
      report.exclusions.push_back({pair.doi, !pre.version_date ? "missing-preprint-date" : "missing-published-date"});
      continue;
    }
    const long diff = days_between(*pre.version_date, *pair.published.version_date);
    PrecedenceRecord rec;
    rec.doi = pair.doi;
    rec.day_gap = diff < 0 ? -diff : diff;
    rec.first_venue = diff > 0 ? Venue::kPreprint : diff < 0 ? Venue::kPublisher : Venue::kSameDay;
    PrecedenceReport::Row* row = nullptr;
    for (auto& r : report.rows) {
      if (r.range.contains(rec.day_gap)) {
        row = &r;
        break;
      }
    }
    if (row == nullptr) throw std::invalid_argument("day ranges do not cover gap " + std::to_string(rec.day_gap));
    switch (rec.first_venue) {
      case Venue::kPreprint:
        ++row->preprint_first;
        ++report.preprint_first;
        break;
      case Venue::kPublisher:
        ++row->publisher_first;
        ++report.publisher_first;
        break;
      case Venue::kSameDay:
        ++row->same_day;
        ++report.same_day;
        break;
    }
    report.records.push_back(std::move(rec));
  }
  const auto n = static_cast<double>(report.records.size());
  if (n > 0) {
    report.pct_preprint_first = 100.0 * static_cast<double>(report.preprint_first) / n;
    report.pct_publisher_first = 100.0 * static_cast<double>(report.publisher_first) / n;
    report.pct_same_day = 100.0 * static_cast<double>(report.same_day) / n;
  }
  return report;
}

}  // namespace prepub::analysis
