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

#include "prepub/crossref.hpp"

#include <json.hpp>

#include "prepub/errors.hpp"

namespace prepub::harvest {
namespace {

using nlohmann::json;

std::optional<Date> date_parts(const json& message, const char* key) {
  if (!message.contains(key)) return std::nullopt;
  const auto& dp = message.at(key);
  if (!dp.is_object() || !dp.contains("date-parts")) return std::nullopt;
  const auto& parts = dp.at("date-parts");
  if (!parts.is_array() || parts.empty() || !parts.at(0).is_array() || parts.at(0).empty()) return std::nullopt;
  const auto& p = parts.at(0);
  if (!p.at(0).is_number_integer()) return std::nullopt;
  const int y = p.at(0).get<int>();
  const unsigned m = p.size() > 1 && p.at(1).is_number_integer() ? p.at(1).get<unsigned>() : 1;
  const unsigned d = p.size() > 2 && p.at(2).is_number_integer() ? p.at(2).get<unsigned>() : 1;
  const Date date{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
  if (!date.ok()) return std::nullopt;
  return date;
}

}  // namespace

WorkRecord parse_work(std::string_view json_text, const std::string& doi) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw MalformedResponse(std::string("work record for ") + doi + " is not JSON: " + e.what());
  }
  if (!doc.is_object() || doc.value("status", std::string{}) != "ok" || !doc.contains("message") ||
      !doc.at("message").is_object()) {
    throw MalformedResponse("work record for " + doi + " has no message");
  }
  const auto& msg = doc.at("message");
  WorkRecord work;
  work.doi = doi;
  if (msg.contains("title") && msg.at("title").is_array() && !msg.at("title").empty() &&
      msg.at("title").at(0).is_string()) {
    work.title = msg.at("title").at(0).get<std::string>();
  }
  for (const char* key : {"published-print", "published-online", "issued"}) {
    if ((work.published = date_parts(msg, key))) break;
  }
  std::optional<std::string> license;
  if (msg.contains("license") && msg.at("license").is_array()) {
    for (const auto& l : msg.at("license")) {
      if (l.is_object() && l.contains("URL") && l.at("URL").is_string()) {
        license = l.at("URL").get<std::string>();
        break;
      }
    }
  }
  if (msg.contains("link")) {
    if (!msg.at("link").is_array()) throw MalformedResponse("link field is not a list");
    for (const auto& l : msg.at("link")) {
      if (!l.is_object() || !l.contains("URL") || !l.at("URL").is_string()) continue;
      FullTextLink link;
      link.doi = doi;
      link.url = l.at("URL").get<std::string>();
      if (link.url.empty()) continue;
      link.content_type = l.value("content-type", std::string("unspecified"));
      link.license_note = license;
      work.links.push_back(std::move(link));
    }
  }
  return work;
}

CrossrefClient::CrossrefClient(Transport& transport, std::string service_base)
    : transport_(transport), base_(std::move(service_base)) {
  while (!base_.empty() && base_.back() == '/') base_.pop_back();
}

std::string CrossrefClient::work_url(const std::string& doi) const {
  return base_ + "/works/" + url_encode(doi, "/");
}

WorkRecord CrossrefClient::work(const std::string& doi) {
  const HttpResponse r = transport_.get(work_url(doi));
  if (r.status == 404) throw NotFound("unknown DOI " + doi);
  if (r.status != 200) {
    throw TransportError("HTTP " + std::to_string(r.status) + " resolving " + doi);
  }
  return parse_work(r.body, doi);
}

std::vector<FullTextLink> CrossrefClient::resolve_fulltext(const std::string& doi) {
  return work(doi).links;
}

}  // namespace prepub::harvest
