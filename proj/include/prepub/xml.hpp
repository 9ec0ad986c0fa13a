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

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace prepub::xml {

/// A parsed XML element with mixed content preserved in document order.
class Element {
 public:
  /// Either a run of character data or a reference to children[child].
  struct Item {
    std::string text;
    int child = -1;
    bool is_element() const noexcept { return child >= 0; }
  };

  std::string name;
  std::vector<std::pair<std::string, std::string>> attributes;
  std::vector<Element> children;
  std::vector<Item> content;

  /// Name without a namespace prefix.
  std::string_view local_name() const;
  /// Attribute by local name, or nullptr.
  const std::string* attribute(std::string_view local) const;
  /// Concatenated character data of the whole subtree.
  std::string text() const;
  /// First child with the given local name, or nullptr.
  const Element* child(std::string_view local) const;
};

/// Parses a complete document and returns its root element.
/// Throws UnparsableRecord on malformed or empty input.
Element parse(std::string_view document);

/// One location step: a local name (or "*") with optional attribute
/// predicates "[@x='v']", "[@x]" and "[!@x]".
struct PathStep {
  struct Predicate {
    enum class Kind { kEquals, kPresent, kAbsent } kind = Kind::kPresent;
    std::string attr;
    std::string value;
  };

  bool descendant = false;
  std::string name;
  std::vector<Predicate> predicates;

  static PathStep parse(std::string_view token);
  bool matches(const Element& e) const;
};

/// Evaluates a small path language against `root`:
///   "a/b"      child steps starting below root
///   "/a/b"     same as "a/b"
///   "//a/b"    first step matches any descendant of root
///   "a//b"     b anywhere below a
///   "a[@x='v']", "a[@x]", "a[!@x]"  attribute predicates
///   "*"        any element
/// Names match on local name. Results are in document order without
/// duplicates.
std::vector<const Element*> select(const Element& root, std::string_view path);

}  // namespace prepub::xml
