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


// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "prepub/analysis.hpp"
#include "prepub/cache.hpp"
#include "prepub/cli/cli.hpp"
#include "prepub/cli/store.hpp"
#include "prepub/errors.hpp"
#include "prepub/oai.hpp"
#include "prepub/simcore.hpp"
#include "prepub/textprep.hpp"
#include "prepub/transport.hpp"
#include "prepub/utf8.hpp"

namespace {

namespace fs = std::filesystem;
using namespace prepub;
using Clock = std::chrono::steady_clock;

const std::string kData = PREPUB_TEST_DATA_DIR;

struct Outcome {
  bool pass = true;
  std::string detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail = what;
      pass = false;
    }
  }
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines_of(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out(1);
  for (char c : s) {
    if (c == sep) {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  return out;
}

int cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run_cli(args, out, err);
  if (code != 0) std::cerr << "prepub " << args.back() << " failed: " << err.str();
  return code;
}

bool pipeline(const fs::path& store, const std::vector<std::string>& synth_args) {
  std::vector<std::string> synth{"--store", store.string(), "--seed", "42", "synth"};
  synth.insert(synth.end(), synth_args.begin(), synth_args.end());
  return cli(synth) == 0 && cli({"--store", store.string(), "match"}) == 0 &&
         cli({"--store", store.string(), "compare"}) == 0 && cli({"--store", store.string(), "report"}) == 0;
}

std::map<std::string, std::string> tree_contents(const fs::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) out[fs::relative(e.path(), root).string()] = slurp(e.path());
  }
  return out;
}

fs::path fresh_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("prepub_acceptance_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

Outcome ac1_levenshtein_oracle() {
  Outcome o;
  const auto start = Clock::now();
  std::mt19937_64 rng(20260101);
  std::size_t mismatches = 0;
  for (int i = 0; i < 10000; ++i) {
    const auto a = oracle::random_string(rng, 12);
    const auto b = oracle::random_string(rng, 12);
    const auto want = oracle::edit_distance(a, b);
    if (simcore::levenshtein_distance(a, b) != want) ++mismatches;
    if (simcore::levenshtein_distance(utf8::encode(a), utf8::encode(b)) != want) ++mismatches;
  }
  const auto small = oracle::all_strings(U"ab", 4);
  for (const auto& a : small) {
    for (const auto& b : small) {
      if (simcore::levenshtein_distance(a, b) != oracle::edit_distance(a, b)) ++mismatches;
    }
  }
  const double secs = seconds_since(start);
  o.check(mismatches == 0, std::to_string(mismatches) + " mismatches");
  o.check(secs < 10.0, "took " + std::to_string(secs) + " s");
  if (o.pass) {
    o.detail = "0 mismatches on 10000 random + " + std::to_string(small.size() * small.size()) +
               " exhaustive pairs in " + std::to_string(secs) + " s";
  }
  return o;
}

Outcome ac2_metric_axioms() {
  Outcome o;
  std::mt19937_64 rng(77);
  const analysis::Comparator comparator;
  const std::u32string alphabet = U"abc d—-é";
  std::size_t checked = 0;
  for (int i = 0; i < 10000; ++i) {
    const auto a = utf8::encode(oracle::random_string(rng, 12, alphabet));
    const auto b = utf8::encode(oracle::random_string(rng, 12, alphabet));
    const auto ab = comparator.score(a, b);
    const auto ba = comparator.score(b, a);
    const auto aa = comparator.score(a, a);
    for (auto m : analysis::kAllMetrics) {
      const std::string name(analysis::to_string(m));
      o.check(ab.get(m) == ba.get(m), name + " not symmetric");
      o.check(aa.get(m) == 1.0, name + " identity != 1");
      o.check(ab.get(m) >= 0.0 && ab.get(m) <= 1.0, name + " out of range");
    }
    const double s = ab.sorensen;
    const double j = ab.jaccard;
    o.check(std::abs(s - 2.0 * j / (1.0 + j)) <= 1e-12, "S != 2J/(1+J)");
    o.check(s >= j, "S < J");
    ++checked;
  }
  if (o.pass) o.detail = "5 measures, " + std::to_string(checked) + " pairs";
  return o;
}

Outcome ac3_anchored_values() {
  Outcome o;
  o.check(simcore::length_similarity(10, 5) == 0.5, "length 10:5");
  o.check(simcore::length_similarity(1000, 2000) == 0.5, "length 1000:2000");
  o.check(simcore::length_similarity("abcd", "ab") == 0.5, "length strings");

  const std::vector<double> scores{0.93, 0.91, 0.83, 0.75, 0.73};
  const std::vector<std::size_t> want{0, 0, 1, 2, 2};
  std::vector<std::size_t> got;
  for (double s : scores) got.push_back(analysis::bin_index(s));
  o.check(got == want, "worked example bins");

  std::vector<double> first_scores, last_scores;
  auto fill = [](std::vector<double>& v, std::size_t top, std::size_t second, std::size_t rest) {
    v.insert(v.end(), top, 0.95);
    v.insert(v.end(), second, 0.85);
    v.insert(v.end(), rest, 0.35);
  };
  fill(first_scores, 611, 59, 330);
  fill(last_scores, 649, 56, 295);
  const auto delta = analysis::delta_report(analysis::bin_scores(analysis::Metric::kCosine, first_scores),
                                            analysis::bin_scores(analysis::Metric::kCosine, last_scores));
  o.check(std::abs(delta[0] - (-3.8)) <= 0.05, "delta(61.1, 64.9) = " + std::to_string(delta[0]));
  o.check(std::abs(delta[1] - 0.3) <= 0.05, "delta(5.9, 5.6) = " + std::to_string(delta[1]));
  if (o.pass) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "length 0.5, bins {0,0,1,2,2}, deltas %.4f / %.4f", delta[0], delta[1]);
    o.detail = buf;
  }
  return o;
}

Outcome ac4_porter() {
  Outcome o;
  const auto start = Clock::now();
  const auto words = lines_of(kData + "/porter/voc.txt");
  const auto expected = lines_of(kData + "/porter/output.txt");
  o.check(words.size() == expected.size() && words.size() > 20000, "fixture missing or uneven");
  std::size_t agree = 0;
  for (std::size_t i = 0; i < words.size() && i < expected.size(); ++i) {
    if (textprep::porter_stem(words[i]) == expected[i]) ++agree;
  }
  const double secs = seconds_since(start);
  o.check(agree == words.size(), std::to_string(words.size() - agree) + " disagreements");
  o.check(secs < 5.0, "took " + std::to_string(secs) + " s");
  if (o.pass) o.detail = std::to_string(agree) + "/" + std::to_string(words.size()) + " words in " +
                         std::to_string(secs) + " s";
  return o;
}

Outcome ac5_cosine() {
  Outcome o;
  auto tc = [](const std::map<std::string, double>& m) {
    textprep::TermCounts c;
    for (const auto& [k, v] : m) c.add(k, static_cast<std::uint64_t>(v));
    return c;
  };
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> n(0, 6);
  for (int i = 0; i < 2000; ++i) {
    std::map<std::string, double> a, b;
    for (const char* t : {"w1", "w2", "w3", "w4", "w5", "w6", "w7"}) {
      if (int k = n(rng)) a[t] = k;
      if (int k = n(rng)) b[t] = k;
    }
    if (a.empty() || b.empty()) continue;
    const double base = simcore::cosine_similarity(tc(a), tc(b));
    for (int k : {2, 3, 10}) {
      auto scaled = a;
      for (auto& [t, v] : scaled) v *= k;
      o.check(std::abs(simcore::cosine_similarity(tc(scaled), tc(b)) - base) <= 1e-12,
              "scale k=" + std::to_string(k));
    }
  }
  const std::map<std::string, double> x{{"a", 1}}, y{{"a", 1}, {"b", 1}};
  const double got = simcore::cosine_similarity(tc(x), tc(y));
  const double want = oracle::cosine(x, y);
  o.check(std::abs(got - 0.7071) <= 1e-4 && std::abs(got - want) <= 1e-4, "{a:1} vs {a:1,b:1} = " + std::to_string(got));
  if (o.pass) o.detail = "scale invariant; {a:1}.{a:1,b:1} = " + std::to_string(got) + " (oracle " +
                         std::to_string(want) + ")";
  return o;
}

Outcome ac6_harvest() {
  using namespace std::chrono_literals;
  Outcome o;
  auto replay = harvest::ReplayTransport::load(kData + "/fixtures/replay");

  const auto interval = 30ms;
  harvest::PoliteTransport polite(*replay, interval, {0, 1ms, 0.0, 1});
  harvest::OaiHarvester harvester(polite);
  std::multiset<std::string> ids;
  harvest::HarvestRequest request;
  request.endpoint = "http://oai.example.org/oai";
  const auto stats = harvester.harvest(request,
                                       [&](const harvest::OaiRecord& r) { ids.insert(r.identifier); });
  const std::set<std::string> unique(ids.begin(), ids.end());
  o.check(stats.pages == 2, "pages " + std::to_string(stats.pages));
  o.check(ids.size() == 4 && unique.size() == 4, "records not delivered exactly once");

  const auto log = replay->requests();
  for (std::size_t i = 1; i < log.size(); ++i) {
    o.check(log[i].started - log[i - 1].started >= interval, "politeness interval violated");
  }

  const auto cache_dir = fresh_dir("cache");
  harvest::ContentCache cache({cache_dir, 1ms, 0, 1ms}, *replay);
  std::size_t thrown = 0;
  for (const harvest::FullTextLink& link :
       {harvest::FullTextLink{"10.5555/b", "http://publisher.example.com/ft/b.xml", "application/xml", {}},
        harvest::FullTextLink{"10.5555/trunc", "http://other.example.net/ft/e.xml", "text/xml", {}}}) {
    try {
      cache.download(link);
    } catch (const DownloadFailed&) {
      ++thrown;
    }
  }
  const auto failures = cache.failures();
  o.check(thrown == 2, "DownloadFailed not raised");
  o.check(failures.size() == 2 && failures[0].reason == "HTTP 404" &&
              failures[1].reason.find("truncated") != std::string::npos,
          "failure ledger incomplete");
  // Every exchange came from the recorded fixtures; an unrecorded URL throws.
  o.check(replay->requests().size() == log.size() + 2, "unexpected transport traffic");
  if (o.pass) o.detail = "4 records once over 2 pages, interval >= 30 ms, 2 ledgered failures, replay only";
  return o;
}

double mean_levenshtein(const fs::path& table) {
  double sum = 0;
  std::size_t n = 0;
  for (const auto& r : cli::read_comparison_table(table)) {
    if (r.metric == "levenshtein" && r.score) {
      sum += *r.score;
      ++n;
    }
  }
  return n ? sum / static_cast<double>(n) : -1;
}

Outcome ac7_end_to_end() {
  Outcome o;
  const auto dir = fresh_dir("e2e");

  const auto start = Clock::now();
  const bool ran = pipeline(dir / "a", {});
  const double secs = seconds_since(start);
  o.check(ran, "pipeline failed");
  o.check(pipeline(dir / "b", {}), "second pipeline failed");
  o.check(ran && tree_contents(dir / "a") == tree_contents(dir / "b"), "runs differ");
  const auto first_reports = tree_contents(dir / "a" / "reports");
  o.check(pipeline(dir / "a", {}) && tree_contents(dir / "a" / "reports") == first_reports,
          "rerun in the same store differs");
  o.check(secs < 60.0, "200 pairs took " + std::to_string(secs) + " s");

  o.check(pipeline(dir / "zero", {"--mutation-rate", "0"}), "rate 0 pipeline failed");
  std::size_t distributions = 0;
  for (const auto& [name, text] : tree_contents(dir / "zero" / "reports")) {
    if (name.rfind("first/", 0) != 0 && name.rfind("last/", 0) != 0) continue;
    ++distributions;
    const auto rows = split(text, '\n');
    o.check(rows.size() > 2 && split(rows[1], ',')[3] == "100", name + " not 100% in bin 0");
  }
  o.check(distributions == 30, "expected 30 distributions, got " + std::to_string(distributions));

  std::vector<double> means;
  for (const char* rate : {"0", "0.05", "0.2"}) {
    const auto store = dir / (std::string("rate") + rate);
    o.check(pipeline(store, {"--mutation-rate", rate}), std::string("pipeline at rate ") + rate);
    means.push_back(mean_levenshtein(store / "comparisons" / "last.csv"));
  }
  o.check(means[0] > means[1] && means[1] > means[2], "mean Levenshtein ratio not strictly decreasing");
  if (o.pass) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "byte-identical reruns, 200 pairs in %.2f s, mean ratio %.4f > %.4f > %.4f", secs,
                  means[0], means[1], means[2]);
    o.detail = buf;
  }
  return o;
}

Outcome ac8_precedence() {
  Outcome o;
  const auto dir = fresh_dir("precedence");
  const std::vector<long> offsets{30, -45, 0, 200, 400, -100, 1, 90, 91, 361, -360, 0};
  std::string list;
  for (long v : offsets) list += (list.empty() ? "" : ",") + std::to_string(v);
  const std::size_t pairs = 120;
  o.check(pipeline(dir, {"--pairs", std::to_string(pairs), "--date-offsets", list}), "pipeline failed");

  // Independent tally: gap bins 0 | 1-90 | 91-180 | 181-270 | 271-360 | 361+.
  auto bin_of = [](long gap) {
    if (gap == 0) return 0;
    if (gap <= 90) return 1;
    if (gap <= 180) return 2;
    if (gap <= 270) return 3;
    if (gap <= 360) return 4;
    return 5;
  };
  std::vector<std::array<std::uint64_t, 3>> want(6, {0, 0, 0});
  std::array<std::uint64_t, 3> totals{0, 0, 0};
  for (std::size_t i = 0; i < pairs; ++i) {
    const long off = offsets[i % offsets.size()];
    const int venue = off > 0 ? 0 : off < 0 ? 1 : 2;
    ++want[static_cast<std::size_t>(bin_of(off < 0 ? -off : off))][static_cast<std::size_t>(venue)];
    ++totals[static_cast<std::size_t>(venue)];
  }

  const auto rows = lines_of(dir / "reports" / "precedence_last.csv");
  o.check(rows.size() == 9, "unexpected precedence file shape");
  if (rows.size() == 9) {
    for (std::size_t b = 0; b < 6; ++b) {
      const auto f = split(rows[b + 1], ',');
      for (std::size_t v = 0; v < 3; ++v) {
        o.check(std::stoull(f[v + 1]) == want[b][v], "bin " + f[0] + " count mismatch");
      }
    }
    const auto pct = split(rows[8], ',');
    double sum = 0;
    for (std::size_t v = 0; v < 3; ++v) {
      const double got = std::stod(pct[v + 1]);
      const double exact = 100.0 * static_cast<double>(totals[v]) / static_cast<double>(pairs);
      o.check(got == exact, "percentage mismatch");
      sum += got;
    }
    o.check(std::abs(sum - 100.0) <= 1e-9, "percentages do not sum to 100");
  }
  if (o.pass) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "preprint %.4f%%, publisher %.4f%%, same day %.4f%%; 18 bin counts exact",
                  100.0 * static_cast<double>(totals[0]) / pairs, 100.0 * static_cast<double>(totals[1]) / pairs,
                  100.0 * static_cast<double>(totals[2]) / pairs);
    o.detail = buf;
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  // An optional argument such as "AC3" runs a single criterion.
  const std::string only = argc > 1 ? argv[1] : "";
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"AC1 levenshtein oracle", ac1_levenshtein_oracle},
      {"AC2 metric axioms", ac2_metric_axioms},
      {"AC3 anchored values", ac3_anchored_values},
      {"AC4 porter fixture", ac4_porter},
      {"AC5 cosine properties", ac5_cosine},
      {"AC6 harvest protocol", ac6_harvest},
      {"AC7 end-to-end determinism", ac7_end_to_end},
      {"AC8 precedence", ac8_precedence},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    if (!only.empty() && std::string(name).rfind(only + " ", 0) != 0) continue;
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
