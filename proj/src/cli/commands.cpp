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


#include <algorithm>
#include <cstdio>
#include <fstream>
#include <memory>
#include <set>
#include <sstream>
#include <unordered_set>

#include <CLI11.hpp>
#include <json.hpp>

#include "prepub/analysis.hpp"
#include "prepub/cache.hpp"
#include "prepub/cli/archive.hpp"
#include "prepub/cli/cli.hpp"
#include "prepub/cli/store.hpp"
#include "prepub/cli/synth.hpp"
#include "prepub/crossref.hpp"
#include "prepub/doi.hpp"
#include "prepub/errors.hpp"
#include "prepub/interchange.hpp"
#include "prepub/matching.hpp"
#include "prepub/oai.hpp"
#include "prepub/sections.hpp"
#include "prepub/transport.hpp"
#include "prepub/xml.hpp"

namespace prepub::cli {
namespace fs = std::filesystem;
using analysis::Metric;
using analysis::VersionSelect;
using nlohmann::ordered_json;

namespace {

constexpr std::string_view kDefaultCrossref = "https://api.crossref.org";

std::string pct_text(double pct) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f%%", pct);
  return buf;
}

std::unique_ptr<harvest::Transport> make_transport(const RunConfig& config) {
  if (config.transport == "live") return std::make_unique<harvest::HttpTransport>();
  if (config.transport.rfind("replay:", 0) == 0) {
    return harvest::ReplayTransport::load(config.transport.substr(7));
  }
  throw ConfigError("unknown transport '" + config.transport + "'");
}

harvest::RetryPolicy retry_policy(const RunConfig& config) {
  harvest::RetryPolicy r;
  r.max_retries = config.harvest.max_retries;
  r.backoff_base = config.harvest.backoff;
  r.seed = config.seed;
  return r;
}

textprep::TermPipeline make_pipeline(const RunConfig& config) {
  if (config.stopword_file) return textprep::TermPipeline(textprep::StopwordSet::load(*config.stopword_file));
  return textprep::TermPipeline();
}

DialectRegistry make_registry(const RunConfig& config) {
  if (config.dialect_file) return DialectRegistry::load(*config.dialect_file);
  return DialectRegistry::builtin();
}

struct HarvestState {
  std::string endpoint;
  std::optional<std::string> set;
  std::optional<Date> last_datestamp;
};

std::optional<HarvestState> read_state(const fs::path& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  try {
    const auto j = nlohmann::json::parse(in);
    HarvestState s;
    s.endpoint = j.at("endpoint").get<std::string>();
    if (!j.at("set").is_null()) s.set = j.at("set").get<std::string>();
    if (!j.at("last_datestamp").is_null()) {
      s.last_datestamp = parse_iso_date(j.at("last_datestamp").get<std::string>());
      if (!s.last_datestamp) throw std::invalid_argument("bad last_datestamp");
    }
    return s;
  } catch (const std::exception& e) {
    throw StoreCorruption(path.string() + ": " + e.what());
  }
}

void write_state(const fs::path& path, const HarvestState& s) {
  ordered_json j;
  j["endpoint"] = s.endpoint;
  j["set"] = s.set ? ordered_json(*s.set) : ordered_json(nullptr);
  j["last_datestamp"] = s.last_datestamp ? ordered_json(format_iso_date(*s.last_datestamp)) : ordered_json(nullptr);
  write_file_atomic(path, j.dump(2) + "\n");
}

// Resolves DOIs through CrossRef, downloads XML full text into the store's
// cache and records the extracted sections as publisher documents.
std::size_t fetch_fulltext(const RunConfig& config, harvest::Transport& raw, const std::vector<std::string>& dois,
                           HarvestSummary& summary, std::ostream& log) {
  const Store store(config.store_dir);
  const auto it = config.endpoints.find("crossref");
  const std::string base = it == config.endpoints.end() ? std::string(kDefaultCrossref) : it->second;
  harvest::PoliteTransport polite(raw, config.harvest.interval, retry_policy(config));
  harvest::CrossrefClient client(polite, base);

  std::map<std::string, harvest::WorkRecord> works;
  std::vector<harvest::FullTextLink> links;
  for (const auto& doi : dois) {
    try {
      auto work = client.work(doi);
      for (const auto& link : work.links) {
        if (link.content_type.find("xml") != std::string::npos) {
          links.push_back(link);
          break;
        }
      }
      works.emplace(doi, std::move(work));
    } catch (const NotFound& e) {
      ++summary.failures;
      log << "crossref: " << e.what() << "\n";
    } catch (const MalformedResponse& e) {
      ++summary.failures;
      log << "crossref: " << doi << ": " << e.what() << "\n";
    }
  }

  harvest::CachePolicy policy;
  policy.root_dir = store.cache_dir();
  policy.min_request_interval = config.harvest.interval;
  policy.max_retries = config.harvest.max_retries;
  policy.backoff_base = config.harvest.backoff;
  harvest::ContentCache cache(policy, raw);
  const auto outcomes = cache.download_all(links, config.harvest.concurrency);

  const auto registry = make_registry(config);
  std::vector<Document> docs;
  for (const auto& o : outcomes) {
    if (!o.path) {
      ++summary.failures;
      log << "download: " << o.error << "\n";
      continue;
    }
    std::ifstream in(*o.path, std::ios::binary);
    std::stringstream bytes;
    bytes << in.rdbuf();
    try {
      Document d;
      d.sections = extract_sections_structured(bytes.str(), registry).sections;
      d.source_id = "crossref:" + o.link.doi;
      d.doi = o.link.doi;
      d.source = Source::kPublisher;
      d.provenance = Provenance::kStructuredXml;
      d.version_date = works.at(o.link.doi).published;
      docs.push_back(std::move(d));
    } catch (const UnparsableRecord& e) {
      ++summary.failures;
      log << "extract: " << o.link.doi << ": " << e.what() << "\n";
    }
  }
  merge_documents(store.published(), docs);
  return docs.size();
}

std::optional<std::string> sniff_doi(const xml::Element& root) {
  for (const char* path : {"//article-id[@pub-id-type='doi']", "//idno[@type='DOI']", "//doi"}) {
    for (const auto* e : xml::select(root, path)) {
      if (auto doi = try_normalize_doi(e->text())) return doi;
    }
  }
  return std::nullopt;
}

struct MetaEntry {
  std::optional<std::string> source_id;
  std::optional<std::string> doi;
  std::optional<int> version_index;
  std::optional<Date> version_date;
};

std::map<std::string, MetaEntry> read_meta(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read metadata file " + path.string());
  std::map<std::string, MetaEntry> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      MetaEntry m;
      if (j.contains("source_id")) m.source_id = j["source_id"].get<std::string>();
      if (j.contains("doi") && !j["doi"].is_null()) m.doi = normalize_doi(j["doi"].get<std::string>());
      if (j.contains("version_index")) m.version_index = j["version_index"].get<int>();
      if (j.contains("version_date") && !j["version_date"].is_null()) {
        m.version_date = parse_iso_date(j["version_date"].get<std::string>());
        if (!m.version_date) throw std::invalid_argument("bad version_date");
      }
      out[fs::path(j.at("file").get<std::string>()).filename().string()] = m;
    } catch (const std::exception& e) {
      throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

struct InputFile {
  std::string name;
  std::string data;
};

std::vector<InputFile> gather_inputs(const std::vector<fs::path>& inputs) {
  std::vector<InputFile> files;
  auto read_file = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw ConfigError("cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  auto add_path = [&](const fs::path& p) {
    if (p.extension() == ".tar") {
      try {
        for (auto& m : read_tar(p)) {
          if (fs::path(m.name).extension() == ".xml") files.push_back({std::move(m.name), std::move(m.data)});
        }
      } catch (const std::runtime_error& e) {
        throw ConfigError(p.string() + ": " + e.what());
      }
    } else {
      files.push_back({p.string(), read_file(p)});
    }
  };
  for (const auto& input : inputs) {
    if (fs::is_directory(input)) {
      std::vector<fs::path> found;
      for (const auto& entry : fs::recursive_directory_iterator(input)) {
        if (!entry.is_regular_file()) continue;
        const auto ext = entry.path().extension();
        if (ext == ".xml" || ext == ".tar") found.push_back(entry.path());
      }
      std::sort(found.begin(), found.end());
      for (const auto& p : found) add_path(p);
    } else if (fs::exists(input)) {
      add_path(input);
    } else {
      throw ConfigError("no such input: " + input.string());
    }
  }
  return files;
}

std::vector<ComparisonRow> select_rows(std::vector<ComparisonRow> rows, const std::vector<Section>& sections) {
  std::erase_if(rows, [&](const ComparisonRow& r) {
    return std::find(sections.begin(), sections.end(), r.section) == sections.end();
  });
  return rows;
}

std::string distribution_csv(const analysis::BinnedDistribution& d) {
  std::string text = "bin,range,count,relative_pct,corpus_pct\n";
  for (std::size_t b = 0; b < analysis::kBinCount; ++b) {
    text += std::to_string(b) + "," + analysis::BinnedDistribution::range_label(b) + "," +
            std::to_string(d.bins[b].count) + "," + format_double(d.bins[b].relative_pct) + "," +
            format_double(d.corpus_pct(b)) + "\n";
  }
  return text;
}

std::string precedence_csv(const analysis::PrecedenceReport& r) {
  std::string text = "range,preprint_first,publisher_first,same_day\n";
  for (const auto& row : r.rows) {
    text += row.range.label() + "," + std::to_string(row.preprint_first) + "," + std::to_string(row.publisher_first) +
            "," + std::to_string(row.same_day) + "\n";
  }
  text += "total," + std::to_string(r.preprint_first) + "," + std::to_string(r.publisher_first) + "," +
          std::to_string(r.same_day) + "\n";
  text += "pct," + format_double(r.pct_preprint_first) + "," + format_double(r.pct_publisher_first) + "," +
          format_double(r.pct_same_day) + "\n";
  return text;
}

}  // namespace

HarvestSummary cmd_harvest(const RunConfig& config, std::ostream& log) {
  const auto endpoint = config.endpoints.find("oai");
  if (endpoint == config.endpoints.end()) throw ConfigError("harvest needs endpoint.oai");
  const Store store(config.store_dir);
  store.ensure();

  harvest::HarvestRequest request;
  request.endpoint = endpoint->second;
  request.set = config.harvest.set;
  request.from = config.harvest.from;
  request.until = config.harvest.until;

  HarvestState state{request.endpoint, request.set, std::nullopt};
  if (auto saved = read_state(store.harvest_state()); saved && saved->endpoint == state.endpoint &&
                                                       saved->set == state.set) {
    state.last_datestamp = saved->last_datestamp;
  }
  if (config.harvest.resume && !request.from && state.last_datestamp) request.from = state.last_datestamp;

  std::unordered_set<std::string> seen;
  for (const auto& d : read_documents(store.preprints())) seen.insert(d.source_id);

  auto raw = make_transport(config);
  harvest::PoliteTransport polite(*raw, config.harvest.interval, retry_policy(config));
  harvest::OaiHarvester harvester(polite);

  HarvestSummary summary;
  std::vector<std::string> new_dois;
  auto sink = [&](const harvest::OaiRecord& record) {
    const auto docs = record_to_documents(record);
    append_documents(store.preprints(), docs);
    ++summary.fetched;
    if (!docs.empty() && docs.front().doi) new_dois.push_back(*docs.front().doi);
    if (record.datestamp && (!state.last_datestamp || *state.last_datestamp < *record.datestamp)) {
      state.last_datestamp = record.datestamp;
    }
  };
  try {
    const auto stats = harvester.harvest(request, sink, seen);
    summary.skipped = stats.duplicates;
    summary.deleted = stats.deleted;
    summary.pages = stats.pages;
  } catch (...) {
    // Records already appended stay; the saved datestamp lets a rerun resume.
    write_state(store.harvest_state(), state);
    throw;
  }
  write_state(store.harvest_state(), state);

  if (config.harvest.fulltext && !new_dois.empty()) {
    summary.fulltext = fetch_fulltext(config, *raw, new_dois, summary, log);
  }
  log << "harvest: fetched " << summary.fetched << " records over " << summary.pages << " pages, skipped "
      << summary.skipped << ", deleted " << summary.deleted << ", full text " << summary.fulltext << ", failures "
      << summary.failures << "\n";
  return summary;
}

ImportSummary cmd_import(const RunConfig& config, const ImportOptions& options, std::ostream& log) {
  if (options.kind != "tei" && options.kind != "publisher") throw ConfigError("--kind must be tei or publisher");
  if (options.inputs.empty()) throw ConfigError("import needs at least one input");
  const Store store(config.store_dir);
  store.ensure();
  const bool tei = options.kind == "tei";
  const auto meta = options.meta ? read_meta(*options.meta) : std::map<std::string, MetaEntry>{};
  const auto registry = make_registry(config);

  ImportSummary summary;
  std::vector<Document> docs;
  for (const auto& file : gather_inputs(options.inputs)) {
    try {
      Document d;
      d.source = tei ? Source::kPreprint : Source::kPublisher;
      d.provenance = tei ? Provenance::kSegmentedPdf : Provenance::kStructuredXml;
      d.sections = tei ? extract_sections_segmented(file.data)
                       : extract_sections_structured(file.data, registry).sections;
      d.source_id = fs::path(file.name).stem().string();
      d.doi = sniff_doi(xml::parse(file.data));
      if (auto m = meta.find(fs::path(file.name).filename().string()); m != meta.end()) {
        if (m->second.source_id) d.source_id = *m->second.source_id;
        if (m->second.doi) d.doi = m->second.doi;
        if (m->second.version_index) d.version_index = *m->second.version_index;
        if (m->second.version_date) d.version_date = m->second.version_date;
      }
      validate(d);
      docs.push_back(std::move(d));
      ++summary.imported;
    } catch (const UnparsableRecord& e) {
      ++summary.failed;
      log << "import: " << file.name << ": " << e.what() << "\n";
    } catch (const std::invalid_argument& e) {
      ++summary.failed;
      log << "import: " << file.name << ": " << e.what() << "\n";
    }
  }
  merge_documents(tei ? store.preprints() : store.published(), docs);
  log << "import: " << summary.imported << " records, " << summary.failed << " failed\n";
  return summary;
}

MatchSummary cmd_match(const RunConfig& config, std::ostream& log) {
  const Store store(config.store_dir);
  store.ensure();
  const auto preprints = read_documents(store.preprints());
  const auto published = read_documents(store.published());
  const auto report = match_pairs(preprints, published);

  write_manifest(store.manifest(), report.pairs);
  std::string unmatched;
  MatchSummary summary;
  summary.pairs = report.pairs.size();
  for (const auto& u : report.unmatched) {
    ordered_json j;
    j["source_id"] = u.source_id;
    j["doi"] = u.doi ? ordered_json(*u.doi) : ordered_json(nullptr);
    j["source"] = to_string(u.source);
    j["version_index"] = u.version_index;
    j["reason"] = u.reason;
    unmatched += j.dump() + "\n";
    ++summary.unmatched[u.reason];
  }
  write_file_atomic(store.unmatched(), unmatched);
  std::string conflicts;
  for (const auto& c : report.conflicts) {
    conflicts += c.doi + "\t" + std::string(to_string(c.source)) + "\tkept " + c.kept_source_id + "\tdropped " +
                 c.dropped_source_id + "\n";
  }
  write_file_atomic(store.conflicts(), conflicts);
  summary.conflicts = report.conflicts.size();

  log << "match: " << summary.pairs << " pairs\n";
  for (const auto& [reason, n] : summary.unmatched) log << "  unmatched " << reason << ": " << n << "\n";
  log << "  conflicts: " << summary.conflicts << "\n";
  return summary;
}

CompareSummary cmd_compare(const RunConfig& config, std::ostream& log) {
  const Store store(config.store_dir);
  if (!fs::exists(store.manifest())) throw StageError("no pair manifest in " + store.root().string() + "; run match");
  std::vector<std::string> problems;
  const auto pairs = load_pairs(store, problems);
  for (const auto& p : problems) log << "compare: skipped " << p << "\n";

  const analysis::Comparator comparator(make_pipeline(config), config.cost_model);
  std::vector<VersionSelect> versions;
  if (config.version_select) {
    versions.push_back(*config.version_select);
  } else {
    versions = {VersionSelect::kFirst, VersionSelect::kLast};
  }

  CompareSummary summary;
  summary.pairs = pairs.size();
  summary.skipped = problems.size();
  for (auto v : versions) {
    const auto comparisons = analysis::compare_pairs(pairs, v, comparator, config.threads);
    std::vector<analysis::SectionComparison> kept;
    for (const auto& c : comparisons) {
      if (std::find(config.sections.begin(), config.sections.end(), c.section) == config.sections.end()) continue;
      if (!c.scores) ++summary.null_sections;
      kept.push_back(c);
    }
    const auto rows = to_rows(kept);
    write_comparison_table(store.comparison_table(v), rows);
    summary.rows += rows.size();
    log << "compare (" << to_string(v) << "): " << pairs.size() << " pairs, " << rows.size() << " rows\n";
  }
  return summary;
}

void cmd_report(const RunConfig& config, std::ostream& out) {
  const Store store(config.store_dir);
  std::map<VersionSelect, std::vector<ComparisonRow>> tables;
  for (auto v : {VersionSelect::kFirst, VersionSelect::kLast}) {
    if (config.version_select && *config.version_select != v) continue;
    const auto path = store.comparison_table(v);
    if (!fs::exists(path)) continue;
    auto rows = select_rows(read_comparison_table(path), config.sections);
    if (!rows.empty()) tables.emplace(v, std::move(rows));
  }
  if (tables.empty()) throw StageError("comparison table is empty or missing; run compare");

  std::vector<MatchedPair> pairs;
  if (fs::exists(store.manifest())) {
    std::vector<std::string> problems;
    pairs = load_pairs(store, problems);
  }

  const auto dir = store.reports_dir();
  fs::remove_all(dir);
  fs::create_directories(dir);

  ordered_json summary;
  summary["pairs"] = pairs.size();
  summary["cost_model"] = config.cost_model_name;
  std::map<std::pair<VersionSelect, std::string>, analysis::BinnedDistribution> dists;

  for (const auto& [v, rows] : tables) {
    const std::string vname(to_string(v));
    ordered_json vsum;
    for (auto s : config.sections) {
      ordered_json ssum;
      for (auto m : analysis::kAllMetrics) {
        std::vector<double> scores;
        std::uint64_t total = 0;
        for (const auto& r : rows) {
          if (r.section != s || r.metric != to_string(m)) continue;
          ++total;
          if (r.score) scores.push_back(*r.score);
        }
        ordered_json msum;
        msum["scored"] = scores.size();
        msum["total"] = total;
        if (scores.empty()) {
          msum["top_bin_pct"] = nullptr;
        } else {
          const auto d = analysis::bin_scores(m, scores, total);
          write_file_atomic(dir / vname / (std::string(to_string(s)) + "_" + std::string(to_string(m)) + ".csv"),
                            distribution_csv(d));
          msum["top_bin_pct"] = d.bins[0].relative_pct;
          dists.emplace(std::pair{v, std::string(to_string(s)) + "_" + std::string(to_string(m))}, d);
        }
        ssum[std::string(to_string(m))] = msum;
      }
      double signed_sum = 0;
      std::size_t signed_n = 0;
      for (const auto& r : rows) {
        if (r.section == s && r.metric == kSignedLength && r.score) {
          signed_sum += *r.score;
          ++signed_n;
        }
      }
      ssum["mean_signed_length"] = signed_n ? ordered_json(signed_sum / static_cast<double>(signed_n))
                                            : ordered_json(nullptr);
      vsum[std::string(to_string(s))] = ssum;
    }

    if (!pairs.empty()) {
      const auto prec = analysis::precedence(pairs, v, config.day_ranges);
      write_file_atomic(dir / ("precedence_" + vname + ".csv"), precedence_csv(prec));
      ordered_json p;
      p["included"] = prec.records.size();
      p["excluded"] = prec.exclusions.size();
      p["pct_preprint_first"] = prec.pct_preprint_first;
      p["pct_publisher_first"] = prec.pct_publisher_first;
      p["pct_same_day"] = prec.pct_same_day;
      vsum["precedence"] = p;
    }
    summary[vname] = vsum;
  }

  if (tables.size() == 2) {
    for (const auto& [key, first] : dists) {
      if (key.first != VersionSelect::kFirst) continue;
      const auto last = dists.find({VersionSelect::kLast, key.second});
      if (last == dists.end()) continue;
      const auto delta = analysis::delta_report(first, last->second);
      std::string text = "bin,range,first_pct,last_pct,delta_pp\n";
      for (std::size_t b = 0; b < analysis::kBinCount; ++b) {
        text += std::to_string(b) + "," + analysis::BinnedDistribution::range_label(b) + "," +
                format_double(first.bins[b].relative_pct) + "," + format_double(last->second.bins[b].relative_pct) +
                "," + format_double(delta[b]) + "\n";
      }
      write_file_atomic(dir / "delta" / (key.second + ".csv"), text);
    }
  }
  write_file_atomic(dir / "summary.json", summary.dump(2) + "\n");

  const VersionSelect headline =
      config.version_select ? *config.version_select
                            : (tables.count(VersionSelect::kLast) ? VersionSelect::kLast : VersionSelect::kFirst);
  const std::string hname(to_string(headline));
  out << "top-bin share, " << hname << " preprint version:\n";
  for (auto s : config.sections) {
    out << "  " << to_string(s) << ":";
    for (auto m : analysis::kAllMetrics) {
      const auto& v = summary[hname][std::string(to_string(s))][std::string(to_string(m))]["top_bin_pct"];
      out << " " << to_string(m) << " " << (v.is_null() ? std::string("n/a") : pct_text(v.get<double>()));
    }
    out << "\n";
  }
  if (summary[hname].contains("precedence")) {
    const auto& p = summary[hname]["precedence"];
    out << "preprint first: " << pct_text(p["pct_preprint_first"].get<double>())
        << ", publisher first: " << pct_text(p["pct_publisher_first"].get<double>())
        << ", same day: " << pct_text(p["pct_same_day"].get<double>()) << "\n";
  }
  out << "reports written to " << dir.string() << "\n";
}

SynthSummary cmd_synth(const RunConfig& config, std::ostream& log) {
  const Store store(config.store_dir);
  store.ensure();
  const auto corpus = generate_corpus(config.synth, config.seed);
  std::ostringstream pre;
  write_documents(pre, corpus.preprints);
  write_file_atomic(store.preprints(), pre.str());
  std::ostringstream pub;
  write_documents(pub, corpus.published);
  write_file_atomic(store.published(), pub.str());
  SynthSummary summary{corpus.published.size(), corpus.preprints.size()};
  log << "synth: " << summary.pairs << " pairs, " << summary.preprint_versions << " preprint versions (seed "
      << config.seed << ")\n";
  return summary;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Preprint versus published-version comparison pipeline", "prepub"};
  app.require_subcommand(1);

  std::string store_dir, config_file, seed, version_select, sections, cost_model, threads;
  auto* o_store = app.add_option("--store", store_dir, "Store directory");
  app.add_option("--config", config_file, "Config file of key = value settings");
  auto* o_seed = app.add_option("--seed", seed, "Seed for synthetic data and retry jitter");
  auto* o_version = app.add_option("--version-select", version_select, "Preprint version to compare: first|last");
  auto* o_sections = app.add_option("--sections", sections, "Comma-separated subset of title,abstract,body");
  auto* o_cost = app.add_option("--cost-model", cost_model, "Levenshtein costs: paper|cited-tool");
  auto* o_threads = app.add_option("--threads", threads, "Worker threads for compare (0 = all cores)");

  auto* harvest_cmd = app.add_subcommand("harvest", "Harvest preprint metadata over OAI-PMH");
  std::string h_endpoint, h_set, h_from, h_until, h_transport;
  bool h_fulltext = false, h_no_resume = false;
  auto* o_endpoint = harvest_cmd->add_option("--endpoint", h_endpoint, "OAI-PMH base URL");
  auto* o_set = harvest_cmd->add_option("--set", h_set, "OAI set spec");
  auto* o_from = harvest_cmd->add_option("--from", h_from, "First datestamp (YYYY-MM-DD)");
  auto* o_until = harvest_cmd->add_option("--until", h_until, "Last datestamp (YYYY-MM-DD)");
  auto* o_transport = harvest_cmd->add_option("--transport", h_transport, "live or replay:<dir>");
  harvest_cmd->add_flag("--fulltext", h_fulltext, "Resolve DOIs and fetch publisher full text");
  harvest_cmd->add_flag("--no-resume", h_no_resume, "Ignore the saved harvest datestamp");

  auto* import_cmd = app.add_subcommand("import", "Import local XML files, directories or tar archives");
  ImportOptions import_opts;
  std::string meta_file;
  import_cmd->add_option("inputs", import_opts.inputs, "Files, directories or .tar archives")->required();
  import_cmd->add_option("--kind", import_opts.kind, "tei (preprints) or publisher")->required();
  auto* o_meta = import_cmd->add_option("--meta", meta_file, "JSONL with per-file source_id, doi, version, date");

  auto* match_cmd = app.add_subcommand("match", "Pair preprints with published versions by DOI");
  auto* compare_cmd = app.add_subcommand("compare", "Score every matched pair and section");
  auto* report_cmd = app.add_subcommand("report", "Write distributions, deltas and precedence reports");

  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic corpus into the store");
  std::string s_pairs, s_rate, s_offsets, s_versions, s_missing;
  auto* o_pairs = synth_cmd->add_option("--pairs", s_pairs, "Number of pairs");
  auto* o_rate = synth_cmd->add_option("--mutation-rate", s_rate, "Per-character substitution probability");
  auto* o_offsets = synth_cmd->add_option("--date-offsets", s_offsets, "Comma-separated day offsets, cycled");
  auto* o_versions = synth_cmd->add_option("--max-versions", s_versions, "Maximum preprint versions per pair");
  auto* o_missing = synth_cmd->add_option("--missing-body-rate", s_missing, "Share of published records without body");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "prepub: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    RunConfig config;
    if (!config_file.empty()) load_config_file(config, config_file);
    const std::vector<std::pair<CLI::Option*, std::pair<const char*, const std::string*>>> overrides{
        {o_store, {"store", &store_dir}},
        {o_seed, {"seed", &seed}},
        {o_version, {"version_select", &version_select}},
        {o_sections, {"sections", &sections}},
        {o_cost, {"cost_model", &cost_model}},
        {o_threads, {"threads", &threads}},
        {o_endpoint, {"endpoint.oai", &h_endpoint}},
        {o_set, {"harvest.set", &h_set}},
        {o_from, {"harvest.from", &h_from}},
        {o_until, {"harvest.until", &h_until}},
        {o_transport, {"transport", &h_transport}},
        {o_pairs, {"synth.pairs", &s_pairs}},
        {o_rate, {"synth.mutation_rate", &s_rate}},
        {o_offsets, {"synth.date_offsets", &s_offsets}},
        {o_versions, {"synth.max_versions", &s_versions}},
        {o_missing, {"synth.missing_body_rate", &s_missing}},
    };
    for (const auto& [opt, setting] : overrides) {
      if (opt->count() > 0) apply_setting(config, setting.first, *setting.second);
    }
    if (h_fulltext) config.harvest.fulltext = true;
    if (h_no_resume) config.harvest.resume = false;
    if (o_meta->count() > 0) import_opts.meta = meta_file;

    if (*harvest_cmd) {
      cmd_harvest(config, out);
    } else if (*import_cmd) {
      cmd_import(config, import_opts, out);
    } else if (*match_cmd) {
      cmd_match(config, out);
    } else if (*compare_cmd) {
      cmd_compare(config, out);
    } else if (*report_cmd) {
      cmd_report(config, out);
    } else if (*synth_cmd) {
      cmd_synth(config, out);
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "prepub: " << e.what() << "\n";
    return kExitUsage;
  } catch (const StageError& e) {
    err << "prepub: " << e.what() << "\n";
    return kExitUsage;
  } catch (const StoreCorruption& e) {
    err << "prepub: store corruption: " << e.what() << "\n";
    return kExitCorruption;
  } catch (const TransportError& e) {
    err << "prepub: " << e.what() << "\n";
    return kExitTransport;
  } catch (const ProtocolError& e) {
    err << "prepub: " << e.what() << "\n";
    return kExitTransport;
  } catch (const TokenExpired& e) {
    err << "prepub: resumption token expired: " << e.what() << "\n";
    return kExitTransport;
  } catch (const MalformedResponse& e) {
    err << "prepub: malformed response: " << e.what() << "\n";
    return kExitTransport;
  } catch (const std::exception& e) {
    err << "prepub: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace prepub::cli
