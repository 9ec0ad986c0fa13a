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

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "prepub/document.hpp"
#include "prepub/xml.hpp"

namespace prepub {

/// Where one section lives in a markup dialect.
struct SectionRule {
  /// Tried in order; the first path that selects anything wins.
  std::vector<std::string> paths;
  /// Join every element selected by the winning path instead of just the
  /// first one.
  bool select_all = false;
};

/// How to pull title/abstract/body out of one family of publisher markup.
struct Dialect {
  std::string name;
  /// Root element local names this dialect claims; "*" matches anything.
  std::vector<std::string> roots;
  /// Optional path that must select something for the dialect to apply.
  std::string requires_path;
  SectionRule title;
  SectionRule abstract;
  SectionRule body;
  /// Elements dropped from linearized text: "name" or "parent/name".
  std::vector<std::string> exclude;
  /// Elements whose text is put on its own line(s); everything else is
  /// inline and joined with no separator.
  std::vector<std::string> blocks;
  /// When no body path matches, take the element with the longest text that
  /// is disjoint from the title and abstract. This is a heuristic and can
  /// pick up non-body material such as back matter.
  bool longest_block_fallback = false;

  bool applies_to(const xml::Element& root) const;
};

/// Ordered set of dialects; the first one that applies to a record is used.
class DialectRegistry {
 public:
  DialectRegistry() = default;
  explicit DialectRegistry(std::vector<Dialect> dialects) : dialects_(std::move(dialects)) {}

  /// Dialects bundled with the toolkit (data/dialects.json at build time).
  static const DialectRegistry& builtin();
  static DialectRegistry from_json(std::string_view json_text);
  static DialectRegistry load(const std::filesystem::path& path);

  const Dialect* find(std::string_view name) const;
  const Dialect* detect(const xml::Element& root) const;
  const std::vector<Dialect>& dialects() const noexcept { return dialects_; }

 private:
  std::vector<Dialect> dialects_;
};

struct Extraction {
  SectionSet sections;
  std::string dialect;
};

/// Linearizes an element: block elements are separated by newlines, inline
/// content is concatenated, whitespace runs collapse to one space and blank
/// lines are dropped.
std::string linearize(const xml::Element& e, const Dialect& dialect);

/// Extracts sections using `dialect`. Throws UnparsableRecord when no
/// section can be found.
SectionSet extract_sections(const xml::Element& root, const Dialect& dialect);

/// Publisher full-text markup. Throws UnparsableRecord for malformed markup,
/// for records no dialect claims, and for records without any section.
Extraction extract_sections_structured(std::string_view record,
                                       const DialectRegistry& registry = DialectRegistry::builtin());

/// TEI output of a PDF segmenter: header title and abstract, body divisions
/// joined by newlines. Figures and bibliography are excluded.
SectionSet extract_sections_segmented(std::string_view record);

}  // namespace prepub
