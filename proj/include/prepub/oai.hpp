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

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "prepub/document.hpp"
#include "prepub/transport.hpp"

namespace prepub::harvest {

/// One OAI-PMH record with Dublin Core metadata. Repeated DC elements keep
/// their order.
struct OaiRecord {
  std::string identifier;
  std::optional<Date> datestamp;
  std::vector<std::string> set_specs;
  std::map<std::string, std::vector<std::string>> metadata;

  const std::vector<std::string>& field(const std::string& name) const;
};

struct HarvestRequest {
  std::string endpoint;
  std::string metadata_prefix = "oai_dc";
  std::optional<std::string> set;
  std::optional<Date> from;
  std::optional<Date> until;
};

struct HarvestStats {
  std::size_t records = 0;
  std::size_t deleted = 0;
  /// Records skipped because their identifier was already seen.
  std::size_t duplicates = 0;
  std::size_t pages = 0;
  /// Times the window was restarted after an expired resumption token.
  std::size_t restarts = 0;
  std::optional<Date> last_datestamp;
};

/// One parsed ListRecords response.
struct OaiPage {
  std::vector<OaiRecord> records;
  std::size_t deleted = 0;
  std::optional<std::string> resumption_token;
};

/// Parses a ListRecords response. "noRecordsMatch" yields an empty page;
/// "badResumptionToken" raises TokenExpired; other OAI errors raise
/// ProtocolError; unparsable XML raises MalformedResponse.
OaiPage parse_list_records(std::string_view xml);

std::string list_records_url(const HarvestRequest& request);
std::string resume_url(const std::string& endpoint, const std::string& token);

class OaiHarvester {
 public:
  explicit OaiHarvester(Transport& transport, std::size_t max_restarts = 3)
      : transport_(transport), max_restarts_(max_restarts) {}

  /// Issues ListRecords and follows resumption tokens until none is left.
  /// Each live record whose identifier is not in `seen` is passed to `sink`
  /// and added to `seen`; deleted records are skipped and counted. An
  /// expired token restarts the window from the last datestamp received.
  HarvestStats harvest(const HarvestRequest& request,
                       const std::function<void(const OaiRecord&)>& sink,
                       std::unordered_set<std::string>& seen);
  HarvestStats harvest(const HarvestRequest& request,
                       const std::function<void(const OaiRecord&)>& sink);

 private:
  std::string fetch(const std::string& url);

  Transport& transport_;
  std::size_t max_restarts_;
};

/// First DOI found among the record's identifier and relation fields.
std::optional<std::string> record_doi(const OaiRecord& record);

/// One preprint Document per distinct dc:date (ascending = version order),
/// carrying the metadata title and description. Falls back to the datestamp
/// when the record has no dates. Returns nothing when neither title nor
/// description is present.
std::vector<Document> record_to_documents(const OaiRecord& record);

}  // namespace prepub::harvest
