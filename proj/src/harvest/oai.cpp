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

#include "prepub/oai.hpp"

#include <algorithm>
#include <set>

#include "prepub/doi.hpp"
#include "prepub/errors.hpp"
#include "prepub/xml.hpp"

namespace prepub::harvest {
namespace {

std::string collapse_ws(std::string_view s) {
  std::string out;
  bool pending = false;
  for (char c : s) {
    if (c == ' ' || c == '\n' || c == '\t' || c == '\r') {
      pending = !out.empty();
      continue;
    }
    if (pending) out += ' ';
    pending = false;
    out += c;
  }
  return out;
}

OaiRecord parse_record(const xml::Element& rec, bool& deleted) {
  OaiRecord out;
  const xml::Element* header = rec.child("header");
  if (header == nullptr) throw MalformedResponse("record without header");
  const std::string* status = header->attribute("status");
  deleted = status != nullptr && *status == "deleted";
  const xml::Element* id = header->child("identifier");
  if (id == nullptr) throw MalformedResponse("record header without identifier");
  out.identifier = collapse_ws(id->text());
  if (const xml::Element* ds = header->child("datestamp")) out.datestamp = parse_iso_date(collapse_ws(ds->text()));
  for (const auto& c : header->children) {
    if (c.local_name() == "setSpec") out.set_specs.push_back(collapse_ws(c.text()));
  }
  if (const xml::Element* md = rec.child("metadata")) {
    for (const auto& container : md->children) {
      for (const auto& field : container.children) {
        out.metadata[std::string(field.local_name())].push_back(collapse_ws(field.text()));
      }
    }
  }
  return out;
}

}  // namespace

const std::vector<std::string>& OaiRecord::field(const std::string& name) const {
  static const std::vector<std::string> kEmpty;
  const auto it = metadata.find(name);
  return it == metadata.end() ? kEmpty : it->second;
}

OaiPage parse_list_records(std::string_view text) {
  xml::Element root;
  try {
    root = xml::parse(text);
  } catch (const UnparsableRecord& e) {
    throw MalformedResponse(std::string("unparsable OAI-PMH response: ") + e.what());
  }
  if (root.local_name() != "OAI-PMH") throw MalformedResponse("not an OAI-PMH response");
  OaiPage page;
  if (const xml::Element* err = root.child("error")) {
    const std::string* code = err->attribute("code");
    const std::string c = code ? *code : "unknown";
    if (c == "noRecordsMatch") return page;
    if (c == "badResumptionToken") throw TokenExpired(collapse_ws(err->text()));
    throw ProtocolError(c, collapse_ws(err->text()));
  }
  const xml::Element* list = root.child("ListRecords");
  if (list == nullptr) throw MalformedResponse("response has neither ListRecords nor error");
  for (const auto& c : list->children) {
    if (c.local_name() == "record") {
      bool deleted = false;
      OaiRecord rec = parse_record(c, deleted);
      if (deleted) {
        ++page.deleted;
      } else {
        page.records.push_back(std::move(rec));
      }
    } else if (c.local_name() == "resumptionToken") {
      const auto token = collapse_ws(c.text());
      if (!token.empty()) page.resumption_token = token;
    }
  }
  return page;
}

std::string list_records_url(const HarvestRequest& request) {
  std::string url = request.endpoint + "?verb=ListRecords&metadataPrefix=" + url_encode(request.metadata_prefix);
  if (request.set) url += "&set=" + url_encode(*request.set, ":");
  if (request.from) url += "&from=" + format_iso_date(*request.from);
  if (request.until) url += "&until=" + format_iso_date(*request.until);
  return url;
}

std::string resume_url(const std::string& endpoint, const std::string& token) {
  return endpoint + "?verb=ListRecords&resumptionToken=" + url_encode(token);
}

std::string OaiHarvester::fetch(const std::string& url) {
  const HttpResponse r = transport_.get(url);
  if (r.status != 200) {
    throw TransportError("HTTP " + std::to_string(r.status) + " from " + url);
  }
  return r.body;
}

HarvestStats OaiHarvester::harvest(const HarvestRequest& request,
                                   const std::function<void(const OaiRecord&)>& sink) {
  std::unordered_set<std::string> seen;
  return harvest(request, sink, seen);
}

HarvestStats OaiHarvester::harvest(const HarvestRequest& request,
                                   const std::function<void(const OaiRecord&)>& sink,
                                   std::unordered_set<std::string>& seen) {
  if (request.from && request.until && *request.until < *request.from) {
    throw std::invalid_argument("harvest window has until < from");
  }
  HarvestStats stats;
  HarvestRequest window = request;
  std::string url = list_records_url(window);
  for (;;) {
    OaiPage page;
    try {
      page = parse_list_records(fetch(url));
    } catch (const TokenExpired&) {
      if (stats.restarts >= max_restarts_) throw;
      ++stats.restarts;
      // Datestamps are inclusive, so restarting at the last one re-delivers
      // some records; `seen` filters them.
      if (stats.last_datestamp) window.from = stats.last_datestamp;
      url = list_records_url(window);
      continue;
    }
    ++stats.pages;
    stats.deleted += page.deleted;
    for (const auto& rec : page.records) {
      if (rec.datestamp && (!stats.last_datestamp || *stats.last_datestamp < *rec.datestamp)) {
        stats.last_datestamp = rec.datestamp;
      }
      if (!seen.insert(rec.identifier).second) {
        ++stats.duplicates;
        continue;
      }
      ++stats.records;
      sink(rec);
    }
    if (!page.resumption_token) break;
    url = resume_url(request.endpoint, *page.resumption_token);
  }
  return stats;
}

std::optional<std::string> record_doi(const OaiRecord& record) {
  for (const char* name : {"identifier", "relation"}) {
    for (const auto& value : record.field(name)) {
      std::string_view v = value;
      const bool looks_like_doi = v.starts_with("doi:") || v.starts_with("DOI:") ||
                                  v.find("doi.org/") != std::string_view::npos || v.starts_with("10.");
      if (!looks_like_doi) continue;
      if (auto doi = try_normalize_doi(v)) return doi;
    }
  }
  return std::nullopt;
}

std::vector<Document> record_to_documents(const OaiRecord& record) {
  Document base;
  base.source_id = record.identifier;
  base.doi = record_doi(record);
  base.source = Source::kPreprint;
  base.provenance = Provenance::kStructuredXml;
  if (!record.field("title").empty()) base.sections.title = record.field("title").front();
  if (!record.field("description").empty()) base.sections.abstract = record.field("description").front();
  if (!base.sections.any()) return {};

  std::set<Date> dates;
  for (const auto& d : record.field("date")) {
    if (auto parsed = parse_iso_date(d)) dates.insert(*parsed);
  }
  if (dates.empty() && record.datestamp) dates.insert(*record.datestamp);

  std::vector<Document> out;
  if (dates.empty()) {
    out.push_back(base);
    return out;
  }
  int index = 1;
  for (const auto& date : dates) {
    Document v = base;
    v.version_index = index++;
    v.version_date = date;
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace prepub::harvest
