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


#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "prepub/doi.hpp"
#include "prepub/errors.hpp"
#include "prepub/interchange.hpp"
#include "prepub/matching.hpp"
#include "prepub/sections.hpp"
#include "prepub/xml.hpp"

namespace prepub {
namespace {

std::string fixture(const std::string& name) {
  std::ifstream in(std::string(PREPUB_TEST_DATA_DIR "/fixtures/xml/") + name, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Document doc(std::string id, std::optional<std::string> doi, Source source, int version = 1) {
  Document d;
  d.source_id = std::move(id);
  d.doi = std::move(doi);
  d.source = source;
  d.version_index = version;
  d.sections.title = "t";
  return d;
}

TEST(Doi, Normalizes) {
  EXPECT_EQ(normalize_doi("10.1234/ABC.def"), "10.1234/abc.def");
  EXPECT_EQ(normalize_doi("https://doi.org/10.1234/X"), "10.1234/x");
  EXPECT_EQ(normalize_doi("http://dx.doi.org/10.1234/X"), "10.1234/x");
  EXPECT_EQ(normalize_doi("doi:10.1234/X"), "10.1234/x");
  EXPECT_EQ(normalize_doi("  DOI:10.1234/X "), "10.1234/x");
  EXPECT_EQ(normalize_doi("info:doi/10.1000.10/abc(1)"), "10.1000.10/abc(1)");
}

TEST(Doi, RejectsMalformed) {
  EXPECT_THROW(normalize_doi(""), MalformedDoi);
  EXPECT_THROW(normalize_doi("11.1234/x"), MalformedDoi);
  EXPECT_THROW(normalize_doi("10.abc/x"), MalformedDoi);
  EXPECT_THROW(normalize_doi("10.1234/"), MalformedDoi);
  EXPECT_THROW(normalize_doi("10.1234/a b"), MalformedDoi);
  EXPECT_FALSE(try_normalize_doi("nonsense"));
}

TEST(Doi, Idempotent) {
  for (const char* raw : {"https://doi.org/10.1/AbC", "doi:10.55/x.y-z", "10.1234/Q"}) {
    const auto once = normalize_doi(raw);
    EXPECT_EQ(normalize_doi(once), once);
  }
}

TEST(Dates, ParseFormatAndGap) {
  const auto a = parse_iso_date("2020-02-28");
  const auto b = parse_iso_date("2020-03-01");
  ASSERT_TRUE(a && b);
  EXPECT_EQ(days_between(*a, *b), 2);
  EXPECT_EQ(days_between(*b, *a), -2);
  EXPECT_EQ(format_iso_date(*a), "2020-02-28");
  EXPECT_FALSE(parse_iso_date("2020-02-30"));
  EXPECT_FALSE(parse_iso_date("2020-2-3"));
  EXPECT_EQ(parse_iso_date("2020-03-01T12:00:00Z"), b);
}

TEST(Xml, SelectPaths) {
  const auto root = xml::parse("<r><a x='1'><b>one</b></a><a><b>two</b><c><b>three</b></c></a></r>");
  EXPECT_EQ(xml::select(root, "a/b").size(), 2u);
  EXPECT_EQ(xml::select(root, "//b").size(), 3u);
  EXPECT_EQ(xml::select(root, "a//b").size(), 3u);
  ASSERT_EQ(xml::select(root, "a[@x='1']/b").size(), 1u);
  EXPECT_EQ(xml::select(root, "a[@x='1']/b")[0]->text(), "one");
  EXPECT_EQ(xml::select(root, "a[!@x]/b")[0]->text(), "two");
  EXPECT_EQ(xml::select(root, "*").size(), 2u);
}

TEST(Xml, MalformedThrows) {
  EXPECT_THROW(xml::parse(fixture("broken.xml")), UnparsableRecord);
  EXPECT_THROW(xml::parse(""), UnparsableRecord);
}

TEST(Sections, TeiStructure) {
  const auto registry = DialectRegistry::builtin();
  const auto e = extract_sections_structured(fixture("tei_preprint.xml"), registry);
  EXPECT_EQ(e.dialect, "tei");
  EXPECT_EQ(e.sections.title, "Sparse Coding of Natural Scenes");
  EXPECT_EQ(e.sections.abstract, "We study sparse codes — learned from images.");
  EXPECT_EQ(e.sections.body,
            "1 Introduction\nSparse codes are [1] efficient.\n2 Methods\nWe fit a dictionary.");
}

TEST(Sections, SegmentedRequiresTei) {
  const auto s = extract_sections_segmented(fixture("tei_preprint.xml"));
  EXPECT_EQ(s.title, "Sparse Coding of Natural Scenes");
  EXPECT_THROW(extract_sections_segmented(fixture("jats_article.xml")), UnparsableRecord);
}

TEST(Sections, Jats) {
  const auto e = extract_sections_structured(fixture("jats_article.xml"));
  EXPECT_EQ(e.dialect, "jats");
  EXPECT_EQ(e.sections.title, "Sparse coding of natural scenes");
  EXPECT_EQ(e.sections.abstract, "We study sparse codes learned from images.");
  EXPECT_EQ(e.sections.body,
            "Introduction\nSparse codes are efficient & compact.\nMethods\nWe fit a dictionary.\nFigure 1\nA caption.");
}

TEST(Sections, Elsevier) {
  const auto e = extract_sections_structured(fixture("elsevier_article.xml"));
  EXPECT_EQ(e.dialect, "elsevier");
  EXPECT_EQ(e.sections.title, "Sparse coding of natural scenes");
  EXPECT_EQ(e.sections.abstract, "We study sparse codes learned from images.");
  EXPECT_EQ(e.sections.body, "Introduction\nSparse codes are efficient.");
}

// Without a body rule match, the largest subtree disjoint from the title and
// abstract becomes the body.
TEST(Sections, GenericFallsBackToLongestBlock) {
  const auto e = extract_sections_structured(fixture("generic_article.xml"));
  EXPECT_EQ(e.dialect, "generic");
  EXPECT_EQ(e.sections.title, "A generic paper");
  EXPECT_FALSE(e.sections.abstract);
  EXPECT_EQ(e.sections.body,
            "Short.\nThis is the longest block of running text in the document and should be taken as body.");
}

TEST(Sections, NothingFoundThrows) {
  EXPECT_THROW(extract_sections_structured("<article><front/></article>"), UnparsableRecord);
}

TEST(Sections, CustomDialectFromJson) {
  const auto reg = DialectRegistry::from_json(R"({"dialects":[{"name":"mini","roots":["doc"],
      "title":{"paths":["/h"]},"abstract":{"paths":[]},"body":{"paths":["/b"]},"exclude":["x"],"blocks":["p"]}]})");
  const auto e = extract_sections_structured("<doc><h>T</h><b><p>one</p><x>drop</x><p>two</p></b></doc>", reg);
  EXPECT_EQ(e.dialect, "mini");
  EXPECT_EQ(e.sections.title, "T");
  EXPECT_EQ(e.sections.body, "one\ntwo");
}

TEST(Interchange, RoundTrip) {
  Document d = doc("arXiv:1", "10.1/x", Source::kPreprint, 2);
  d.version_date = parse_iso_date("2021-01-05");
  d.sections.abstract = "line one\nline \"two\" — ü";
  d.sections.title.reset();
  d.provenance = Provenance::kSegmentedPdf;
  const auto line = serialize(d);
  EXPECT_EQ(line.find('\n'), std::string::npos);
  EXPECT_EQ(deserialize(line), d);
  EXPECT_NE(line.find("\"title\":null"), std::string::npos);
}

TEST(Interchange, RandomRoundTrips) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int i = 0; i < 200; ++i) {
    Document d = doc("id" + std::to_string(i), coin(rng) ? std::optional<std::string>("10.9/" + std::to_string(i))
                                                         : std::nullopt,
                     coin(rng) ? Source::kPreprint : Source::kPublisher);
    if (coin(rng)) d.sections.body = std::string(static_cast<std::size_t>(i), 'x') + "\t\x01";
    if (coin(rng)) d.version_date = parse_iso_date("1999-12-31");
    ASSERT_EQ(deserialize(serialize(d)), d);
  }
}

TEST(Interchange, CorruptLineNamesLocation) {
  std::istringstream in(serialize(doc("a", "10.1/a", Source::kPreprint)) + "\n{not json}\n");
  try {
    read_documents(in, "store.jsonl");
    FAIL();
  } catch (const StoreCorruption& e) {
    EXPECT_NE(std::string(e.what()).find("store.jsonl:2"), std::string::npos);
  }
  EXPECT_THROW(deserialize(R"({"source_id":"a","source":"blog"})"), StoreCorruption);
}

TEST(Interchange, AppendAndMissingFile) {
  const auto path = std::filesystem::temp_directory_path() / "prepub_interchange_test.jsonl";
  std::filesystem::remove(path);
  EXPECT_TRUE(read_documents(path).empty());
  const std::vector<Document> docs{doc("a", "10.1/a", Source::kPreprint), doc("b", std::nullopt, Source::kPublisher)};
  append_documents(path, std::span(docs).first(1));
  append_documents(path, std::span(docs).last(1));
  EXPECT_EQ(read_documents(path), docs);
  std::filesystem::remove(path);
}

TEST(Validate, Rules) {
  EXPECT_NO_THROW(validate(doc("a", std::nullopt, Source::kPreprint, 3)));
  EXPECT_THROW(validate(doc("", std::nullopt, Source::kPreprint)), std::invalid_argument);
  EXPECT_THROW(validate(doc("a", std::nullopt, Source::kPreprint, 0)), std::invalid_argument);
  EXPECT_THROW(validate(doc("a", std::nullopt, Source::kPublisher, 2)), std::invalid_argument);
  Document empty = doc("a", std::nullopt, Source::kPreprint);
  empty.sections.title.reset();
  EXPECT_THROW(validate(empty), std::invalid_argument);
}

TEST(Matching, ThreeMatchablePairs) {
  std::vector<Document> pre{doc("p1", "10.1/a", Source::kPreprint, 2), doc("p1", "10.1/a", Source::kPreprint, 1),
                            doc("p2", "10.1/b", Source::kPreprint), doc("p3", "10.1/c", Source::kPreprint)};
  std::vector<Document> pub{doc("j3", "10.1/c", Source::kPublisher), doc("j1", "10.1/a", Source::kPublisher),
                            doc("j2", "10.1/b", Source::kPublisher)};
  const auto r = match_pairs(pre, pub);
  ASSERT_EQ(r.pairs.size(), 3u);
  EXPECT_EQ(r.pairs[0].doi, "10.1/a");
  EXPECT_EQ(r.pairs[0].first().version_index, 1);
  EXPECT_EQ(r.pairs[0].last().version_index, 2);
  EXPECT_EQ(r.pairs[2].published.source_id, "j3");
  EXPECT_TRUE(r.unmatched.empty());
  EXPECT_TRUE(r.conflicts.empty());
}

TEST(Matching, PreprintsOnly) {
  std::vector<Document> pre{doc("p1", "10.1/a", Source::kPreprint), doc("p2", std::nullopt, Source::kPreprint)};
  const auto r = match_pairs(pre, {});
  EXPECT_TRUE(r.pairs.empty());
  ASSERT_EQ(r.unmatched.size(), 2u);
  EXPECT_EQ(r.unmatched[0].reason, "no-doi");
  EXPECT_EQ(r.unmatched[1].reason, "no-published");
}

TEST(Matching, DuplicatePublishedFirstWins) {
  std::vector<Document> pre{doc("p1", "10.1/a", Source::kPreprint)};
  std::vector<Document> pub{doc("j1", "10.1/a", Source::kPublisher), doc("j2", "10.1/a", Source::kPublisher)};
  const auto r = match_pairs(pre, pub);
  ASSERT_EQ(r.pairs.size(), 1u);
  EXPECT_EQ(r.pairs[0].published.source_id, "j1");
  ASSERT_EQ(r.conflicts.size(), 1u);
  EXPECT_EQ(r.conflicts[0].dropped_source_id, "j2");
  EXPECT_EQ(r.unmatched[0].reason, "duplicate-published");
}

TEST(Matching, DuplicatePreprintAndVersion) {
  std::vector<Document> pre{doc("p1", "10.1/a", Source::kPreprint), doc("p1", "10.1/a", Source::kPreprint),
                            doc("p9", "10.1/a", Source::kPreprint)};
  std::vector<Document> pub{doc("j1", "10.1/a", Source::kPublisher), doc("j5", "10.1/z", Source::kPublisher)};
  const auto r = match_pairs(pre, pub);
  ASSERT_EQ(r.pairs.size(), 1u);
  EXPECT_EQ(r.pairs[0].preprint_versions.size(), 1u);
  std::multiset<std::string> reasons;
  for (const auto& u : r.unmatched) reasons.insert(u.reason);
  EXPECT_EQ(reasons, (std::multiset<std::string>{"duplicate-version", "duplicate-preprint", "no-preprint"}));
}

}  // namespace
}  // namespace prepub
