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

#include "prepub/xml.hpp"

#include <expat.h>

#include <algorithm>
#include <memory>
#include <optional>
#include <stdexcept>
#include <unordered_set>

#include "prepub/errors.hpp"

namespace prepub::xml {

std::string_view Element::local_name() const {
  std::string_view n = name;
  const auto colon = n.rfind(':');
  return colon == std::string_view::npos ? n : n.substr(colon + 1);
}

const std::string* Element::attribute(std::string_view local) const {
  for (const auto& [key, value] : attributes) {
    std::string_view k = key;
    const auto colon = k.rfind(':');
    if (colon != std::string_view::npos) k = k.substr(colon + 1);
    if (k == local) return &value;
  }
  return nullptr;
}

std::string Element::text() const {
  std::string out;
  for (const auto& item : content) {
    if (item.is_element()) {
      out += children[static_cast<std::size_t>(item.child)].text();
    } else {
      out += item.text;
    }
  }
  return out;
}

const Element* Element::child(std::string_view local) const {
  for (const auto& c : children) {
    if (c.local_name() == local) return &c;
  }
  return nullptr;
}

namespace {

struct Builder {
  std::vector<Element> stack;
  std::optional<Element> root;

  static void on_start(void* user, const XML_Char* name, const XML_Char** attrs) {
    auto* self = static_cast<Builder*>(user);
    Element e;
    e.name = name;
    for (int i = 0; attrs[i] != nullptr; i += 2) e.attributes.emplace_back(attrs[i], attrs[i + 1]);
    self->stack.push_back(std::move(e));
  }

  static void on_end(void* user, const XML_Char*) {
    auto* self = static_cast<Builder*>(user);
    Element done = std::move(self->stack.back());
    self->stack.pop_back();
    if (self->stack.empty()) {
      self->root = std::move(done);
      return;
    }
    Element& parent = self->stack.back();
    parent.children.push_back(std::move(done));
    parent.content.push_back({{}, static_cast<int>(parent.children.size() - 1)});
  }

  static void on_text(void* user, const XML_Char* s, int len) {
    auto* self = static_cast<Builder*>(user);
    if (self->stack.empty()) return;
    Element& top = self->stack.back();
    if (!top.content.empty() && !top.content.back().is_element()) {
      top.content.back().text.append(s, static_cast<std::size_t>(len));
    } else {
      top.content.push_back({std::string(s, static_cast<std::size_t>(len)), -1});
    }
  }

  // Entities declared in an unread external DTD (e.g. &nbsp; in publisher
  // markup) are dropped rather than failing the document.
  static void on_skipped_entity(void*, const XML_Char*, int) {}
};

struct ParserDeleter {
  void operator()(XML_ParserStruct* p) const { XML_ParserFree(p); }
};

bool is_blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; });
}

}  // namespace

Element parse(std::string_view document) {
  if (is_blank(document)) throw UnparsableRecord("empty document");
  std::unique_ptr<XML_ParserStruct, ParserDeleter> parser(XML_ParserCreate("UTF-8"));
  if (!parser) throw std::bad_alloc();
  Builder builder;
  XML_SetUserData(parser.get(), &builder);
  XML_SetElementHandler(parser.get(), &Builder::on_start, &Builder::on_end);
  XML_SetCharacterDataHandler(parser.get(), &Builder::on_text);
  XML_SetSkippedEntityHandler(parser.get(), &Builder::on_skipped_entity);
  if (XML_Parse(parser.get(), document.data(), static_cast<int>(document.size()), XML_TRUE) ==
      XML_STATUS_ERROR) {
    throw UnparsableRecord(std::string("XML error at line ") +
                           std::to_string(XML_GetCurrentLineNumber(parser.get())) + ": " +
                           XML_ErrorString(XML_GetErrorCode(parser.get())));
  }
  if (!builder.root) throw UnparsableRecord("document has no root element");
  return std::move(*builder.root);
}

namespace {

using Step = PathStep;

std::vector<Step> parse_path(std::string_view path) {
  std::vector<Step> steps;
  bool descendant = false;
  std::size_t i = 0;
  if (path.starts_with("//")) {
    descendant = true;
    i = 2;
  } else if (path.starts_with("/")) {
    i = 1;
  }
  while (i < path.size()) {
    // End of this step, skipping over bracketed predicates.
    std::size_t j = i;
    int depth = 0;
    while (j < path.size() && (depth > 0 || path[j] != '/')) {
      if (path[j] == '[') ++depth;
      if (path[j] == ']') --depth;
      ++j;
    }
    Step step = PathStep::parse(path.substr(i, j - i));
    step.descendant = descendant;
    steps.push_back(std::move(step));
    descendant = false;
    i = j;
    if (i < path.size() && path.substr(i).starts_with("//")) {
      descendant = true;
      i += 2;
    } else if (i < path.size()) {
      ++i;
    }
  }
  return steps;
}

bool matches(const Element& e, const Step& step) { return step.matches(e); }

void collect_descendants(const Element& e, const Step& step, std::vector<const Element*>& out) {
  for (const auto& c : e.children) {
    if (matches(c, step)) out.push_back(&c);
    collect_descendants(c, step, out);
  }
}

}  // namespace

PathStep PathStep::parse(std::string_view token) {
  if (token.empty()) throw std::invalid_argument("empty path step");
  PathStep step;
  const auto bracket = token.find('[');
  step.name = std::string(token.substr(0, bracket));
  if (step.name.empty()) throw std::invalid_argument("path step has no name: " + std::string(token));
  token = bracket == std::string_view::npos ? std::string_view{} : token.substr(bracket);
  while (!token.empty()) {
    if (token.front() != '[') throw std::invalid_argument("junk after predicate: " + std::string(token));
    const auto close = token.find(']');
    if (close == std::string_view::npos) throw std::invalid_argument("unclosed predicate");
    std::string_view body = token.substr(1, close - 1);
    token = token.substr(close + 1);
    Predicate pred;
    if (body.starts_with("!@")) {
      pred.kind = Predicate::Kind::kAbsent;
      pred.attr = std::string(body.substr(2));
    } else if (body.starts_with("@")) {
      body.remove_prefix(1);
      const auto eq = body.find('=');
      if (eq == std::string_view::npos) {
        pred.attr = std::string(body);
      } else {
        pred.kind = Predicate::Kind::kEquals;
        pred.attr = std::string(body.substr(0, eq));
        std::string_view v = body.substr(eq + 1);
        if (v.size() >= 2 && (v.front() == '\'' || v.front() == '"') && v.back() == v.front()) {
          v = v.substr(1, v.size() - 2);
        }
        pred.value = std::string(v);
      }
    } else {
      throw std::invalid_argument("unsupported predicate [" + std::string(body) + "]");
    }
    step.predicates.push_back(std::move(pred));
  }
  return step;
}

bool PathStep::matches(const Element& e) const {
  if (name != "*" && e.local_name() != name) return false;
  for (const auto& p : predicates) {
    const std::string* v = e.attribute(p.attr);
    switch (p.kind) {
      case Predicate::Kind::kPresent:
        if (v == nullptr) return false;
        break;
      case Predicate::Kind::kAbsent:
        if (v != nullptr) return false;
        break;
      case Predicate::Kind::kEquals:
        if (v == nullptr || *v != p.value) return false;
        break;
    }
  }
  return true;
}

std::vector<const Element*> select(const Element& root, std::string_view path) {
  const auto steps = parse_path(path);
  std::vector<const Element*> current{&root};
  for (const auto& step : steps) {
    std::vector<const Element*> next;
    std::unordered_set<const Element*> seen;
    for (const Element* e : current) {
      std::vector<const Element*> found;
      if (step.descendant) {
        collect_descendants(*e, step, found);
      } else {
        for (const auto& c : e->children) {
          if (matches(c, step)) found.push_back(&c);
        }
      }
      for (const Element* f : found) {
        if (seen.insert(f).second) next.push_back(f);
      }
    }
    current = std::move(next);
  }
  if (steps.empty()) return {};
  return current;
}

}  // namespace prepub::xml
