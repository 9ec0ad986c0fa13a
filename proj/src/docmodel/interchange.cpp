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

#include "prepub/interchange.hpp"

#include <json.hpp>

#include <fstream>

#include "prepub/errors.hpp"

namespace prepub {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json optional_string(const std::optional<std::string>& s) {
  return s ? ordered_json(*s) : ordered_json(nullptr);
}

std::optional<std::string> read_optional_string(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (v.is_null()) return std::nullopt;
  if (!v.is_string()) throw std::invalid_argument(std::string(key) + " must be a string or null");
  return v.get<std::string>();
}

}  // namespace

std::string serialize(const Document& doc) {
  ordered_json j;
  j["source_id"] = doc.source_id;
  j["doi"] = optional_string(doc.doi);
  j["source"] = std::string(to_string(doc.source));
  j["version_index"] = doc.version_index;
  j["version_date"] = doc.version_date ? ordered_json(format_iso_date(*doc.version_date)) : ordered_json(nullptr);
  j["title"] = optional_string(doc.sections.title);
  j["abstract"] = optional_string(doc.sections.abstract);
  j["body"] = optional_string(doc.sections.body);
  j["provenance"] = std::string(to_string(doc.provenance));
  return j.dump(-1, ' ', false, json::error_handler_t::replace);
}

Document deserialize(std::string_view line) {
  try {
    const auto j = json::parse(line);
    if (!j.is_object()) throw std::invalid_argument("record is not an object");
    Document doc;
    doc.source_id = j.at("source_id").get<std::string>();
    doc.doi = read_optional_string(j, "doi");
    const auto source = parse_source(j.at("source").get<std::string>());
    if (!source) throw std::invalid_argument("unknown source");
    doc.source = *source;
    doc.version_index = j.at("version_index").get<int>();
    if (const auto date = read_optional_string(j, "version_date")) {
      doc.version_date = parse_iso_date(*date);
      if (!doc.version_date) throw std::invalid_argument("bad version_date '" + *date + "'");
    }
    doc.sections.title = read_optional_string(j, "title");
    doc.sections.abstract = read_optional_string(j, "abstract");
    doc.sections.body = read_optional_string(j, "body");
    const auto prov = parse_provenance(j.at("provenance").get<std::string>());
    if (!prov) throw std::invalid_argument("unknown provenance");
    doc.provenance = *prov;
    validate(doc);
    return doc;
  } catch (const json::exception& e) {
    throw StoreCorruption(std::string("bad interchange record: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw StoreCorruption(std::string("bad interchange record: ") + e.what());
  }
}

void write_documents(std::ostream& out, std::span<const Document> docs) {
  for (const auto& d : docs) out << serialize(d) << '\n';
}

std::vector<Document> read_documents(std::istream& in, const std::string& origin) {
  std::vector<Document> docs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      docs.push_back(deserialize(line));
    } catch (const StoreCorruption& e) {
      throw StoreCorruption(origin + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return docs;
}

std::vector<Document> read_documents(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) return {};
  std::ifstream in(path);
  if (!in) throw StoreCorruption("cannot read " + path.string());
  return read_documents(in, path.string());
}

void append_documents(const std::filesystem::path& path, std::span<const Document> docs) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::app | std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_documents(out, docs);
}

}  // namespace prepub
