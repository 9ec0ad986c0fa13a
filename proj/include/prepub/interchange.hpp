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
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "prepub/document.hpp"

namespace prepub {

// Canonical interchange format: one JSON object per line, UTF-8, with the
// fields source_id, doi, source, version_index, version_date, title,
// abstract, body, provenance in that order. Absent values are null.

/// One line without the trailing newline.
std::string serialize(const Document& doc);
/// Throws StoreCorruption on malformed or invalid records.
Document deserialize(std::string_view line);

void write_documents(std::ostream& out, std::span<const Document> docs);
std::vector<Document> read_documents(std::istream& in, const std::string& origin = "<stream>");
/// A missing file reads as empty.
std::vector<Document> read_documents(const std::filesystem::path& path);
void append_documents(const std::filesystem::path& path, std::span<const Document> docs);

}  // namespace prepub
