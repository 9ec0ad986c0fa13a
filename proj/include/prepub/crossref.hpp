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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "prepub/document.hpp"
#include "prepub/transport.hpp"

namespace prepub::harvest {

/// A full-text location advertised for a DOI.
struct FullTextLink {
  std::string doi;
  std::string url;
  /// Exactly as served by the metadata service.
  std::string content_type;
  std::optional<std::string> license_note;
};

/// The parts of a CrossRef-style work record this toolkit uses.
struct WorkRecord {
  std::string doi;
  std::optional<std::string> title;
  /// published-print, else published-online, else issued.
  std::optional<Date> published;
  std::vector<FullTextLink> links;
};

/// Parses a works/{doi} response body. Throws MalformedResponse.
WorkRecord parse_work(std::string_view json_text, const std::string& doi);

class CrossrefClient {
 public:
  CrossrefClient(Transport& transport, std::string service_base);

  std::string work_url(const std::string& doi) const;
  /// Throws NotFound for unknown DOIs, MalformedResponse for bodies that are
  /// not a work record, TransportError when the service cannot be reached.
  WorkRecord work(const std::string& doi);
  /// All advertised full-text links; empty when the work advertises none.
  std::vector<FullTextLink> resolve_fulltext(const std::string& doi);

 private:
  Transport& transport_;
  std::string base_;
};

}  // namespace prepub::harvest
