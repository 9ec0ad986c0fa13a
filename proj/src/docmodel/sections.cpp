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

#include "prepub/sections.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "prepub/errors.hpp"

namespace prepub {
namespace {

constexpr std::string_view kBuiltinDialects =
#include "builtin_dialects.inc"
    ;

// An exclusion pattern: a step, optionally constrained by the parent's step.
struct Exclusion {
  std::optional<xml::PathStep> parent;
  xml::PathStep self;
};

class Linearizer {
 public:
  explicit Linearizer(const Dialect& d) {
    for (const auto& pattern : d.exclude) {
      const auto slash = pattern.find('/');
      if (slash == std::string::npos) {
        exclusions_.push_back({std::nullopt, xml::PathStep::parse(pattern)});
      } else {
        exclusions_.push_back({xml::PathStep::parse(std::string_view(pattern).substr(0, slash)),
                               xml::PathStep::parse(std::string_view(pattern).substr(slash + 1))});
      }
    }
    blocks_.insert(d.blocks.begin(), d.blocks.end());
  }

  bool excluded(const xml::Element& e, const xml::Element* parent) const {
    for (const auto& ex : exclusions_) {
      if (!ex.self.matches(e)) continue;
      if (!ex.parent || (parent != nullptr && ex.parent->matches(*parent))) return true;
    }
    return false;
  }

  std::string run(const xml::Element& e) const {
    std::string raw;
    walk(e, raw);
    return tidy(raw);
  }

 private:
  bool is_block(const xml::Element& e) const {
    return blocks_.count(std::string(e.local_name())) != 0;
  }

  void walk(const xml::Element& e, std::string& out) const {
    for (const auto& item : e.content) {
      if (!item.is_element()) {
        // Line breaks in character data are layout, not structure.
        for (char c : item.text) out += c == '\n' ? ' ' : c;
        continue;
      }
      const auto& child = e.children[static_cast<std::size_t>(item.child)];
      if (excluded(child, &e)) continue;
      const bool block = is_block(child);
      if (block) out += '\n';
      walk(child, out);
      if (block) out += '\n';
    }
  }

  static bool is_ws(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v'; }

  // Collapses whitespace, trims each line and drops blank lines.
  static std::string tidy(std::string_view raw) {
    std::string out;
    std::string line;
    auto flush = [&] {
      while (!line.empty() && line.back() == ' ') line.pop_back();
      if (!line.empty()) {
        if (!out.empty()) out += '\n';
        out += line;
      }
      line.clear();
    };
    for (char c : raw) {
      if (c == '\n') {
        flush();
      } else if (is_ws(c)) {
        if (!line.empty() && line.back() != ' ') line += ' ';
      } else {
        line += c;
      }
    }
    flush();
    return out;
  }

  std::vector<Exclusion> exclusions_;
  std::unordered_set<std::string> blocks_;
};

std::vector<const xml::Element*> select_rule(const xml::Element& root, const SectionRule& rule) {
  for (const auto& path : rule.paths) {
    auto found = xml::select(root, path);
    if (found.empty()) continue;
    if (!rule.select_all) found.resize(1);
    return found;
  }
  return {};
}

std::optional<std::string> join_selected(const std::vector<const xml::Element*>& elements,
                                         const Linearizer& lin) {
  if (elements.empty()) return std::nullopt;
  std::string out;
  for (const auto* e : elements) {
    auto text = lin.run(*e);
    if (text.empty()) continue;
    if (!out.empty()) out += '\n';
    out += text;
  }
  return out;
}

bool contains(const xml::Element& outer, const xml::Element* inner) {
  if (&outer == inner) return true;
  for (const auto& c : outer.children) {
    if (contains(c, inner)) return true;
  }
  return false;
}

std::size_t text_length(const xml::Element& e, const Linearizer& lin) { return lin.run(e).size(); }

void longest_block(const xml::Element& e, const std::vector<const xml::Element*>& avoid, const Linearizer& lin,
                   const xml::Element*& best, std::size_t& best_len) {
  for (const auto& c : e.children) {
    if (lin.excluded(c, &e)) continue;
    bool overlaps = false;
    bool is_ancestor = false;
    for (const auto* a : avoid) {
      if (contains(*a, &c)) overlaps = true;
      if (contains(c, a)) is_ancestor = true;
    }
    if (overlaps) continue;
    if (!is_ancestor) {
      const auto len = text_length(c, lin);
      if (len > best_len) {
        best = &c;
        best_len = len;
      }
      continue;
    }
    longest_block(c, avoid, lin, best, best_len);
  }
}

SectionRule parse_rule(const nlohmann::json& j, bool default_all) {
  SectionRule rule;
  rule.select_all = default_all;
  if (j.is_array()) {
    rule.paths = j.get<std::vector<std::string>>();
    return rule;
  }
  rule.paths = j.at("paths").get<std::vector<std::string>>();
  if (j.contains("select")) {
    const auto sel = j.at("select").get<std::string>();
    if (sel != "all" && sel != "first") throw std::invalid_argument("select must be 'first' or 'all'");
    rule.select_all = sel == "all";
  }
  for (const auto& p : rule.paths) xml::select(xml::Element{}, p);  // validates syntax
  return rule;
}

}  // namespace

bool Dialect::applies_to(const xml::Element& root) const {
  const bool root_ok = std::any_of(roots.begin(), roots.end(), [&](const std::string& r) {
    return r == "*" || r == root.local_name();
  });
  if (!root_ok) return false;
  return requires_path.empty() || !xml::select(root, requires_path).empty();
}

const DialectRegistry& DialectRegistry::builtin() {
  static const DialectRegistry registry = from_json(kBuiltinDialects);
  return registry;
}

DialectRegistry DialectRegistry::from_json(std::string_view json_text) {
  std::vector<Dialect> dialects;
  try {
    const auto doc = nlohmann::json::parse(json_text);
    for (const auto& d : doc.at("dialects")) {
      Dialect dialect;
      dialect.name = d.at("name").get<std::string>();
      dialect.roots = d.at("roots").get<std::vector<std::string>>();
      dialect.requires_path = d.value("requires", std::string{});
      dialect.title = parse_rule(d.at("title"), false);
      dialect.abstract = parse_rule(d.at("abstract"), false);
      dialect.body = parse_rule(d.at("body"), true);
      dialect.exclude = d.value("exclude", std::vector<std::string>{});
      dialect.blocks = d.value("blocks", std::vector<std::string>{});
      dialect.longest_block_fallback = d.value("longest_block_fallback", false);
      Linearizer{dialect};  // validates exclusion patterns
      dialects.push_back(std::move(dialect));
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad dialect configuration: ") + e.what());
  }
  return DialectRegistry(std::move(dialects));
}

DialectRegistry DialectRegistry::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dialect file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

const Dialect* DialectRegistry::find(std::string_view name) const {
  for (const auto& d : dialects_) {
    if (d.name == name) return &d;
  }
  return nullptr;
}

const Dialect* DialectRegistry::detect(const xml::Element& root) const {
  for (const auto& d : dialects_) {
    if (d.applies_to(root)) return &d;
  }
  return nullptr;
}

std::string linearize(const xml::Element& e, const Dialect& dialect) {
  return Linearizer(dialect).run(e);
}

SectionSet extract_sections(const xml::Element& root, const Dialect& dialect) {
  const Linearizer lin(dialect);
  SectionSet out;
  const auto title = select_rule(root, dialect.title);
  const auto abstract = select_rule(root, dialect.abstract);
  out.title = join_selected(title, lin);
  out.abstract = join_selected(abstract, lin);
  out.body = join_selected(select_rule(root, dialect.body), lin);
  if (!out.body && dialect.longest_block_fallback) {
    std::vector<const xml::Element*> avoid = title;
    avoid.insert(avoid.end(), abstract.begin(), abstract.end());
    const xml::Element* best = nullptr;
    std::size_t best_len = 0;
    longest_block(root, avoid, lin, best, best_len);
    if (best != nullptr) out.body = lin.run(*best);
  }
  if (!out.any()) throw UnparsableRecord("no title, abstract or body found (dialect " + dialect.name + ")");
  return out;
}

Extraction extract_sections_structured(std::string_view record, const DialectRegistry& registry) {
  const auto root = xml::parse(record);
  const Dialect* dialect = registry.detect(root);
  if (dialect == nullptr) {
    throw UnparsableRecord("no dialect for root element <" + root.name + ">");
  }
  return {extract_sections(root, *dialect), dialect->name};
}

SectionSet extract_sections_segmented(std::string_view record) {
  const auto root = xml::parse(record);
  if (root.local_name() != "TEI") {
    throw UnparsableRecord("segmenter output must have a TEI root, got <" + root.name + ">");
  }
  const Dialect* tei = DialectRegistry::builtin().find("tei");
  return extract_sections(root, *tei);
}

}  // namespace prepub
