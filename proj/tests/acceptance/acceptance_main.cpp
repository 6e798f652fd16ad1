/*
 * Copyright (c) 2026 The deltaflow Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Acceptance suite: one PASS/FAIL/SKIP line per criterion. Exits nonzero if
// any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "deltaflow/bench/datasets.hpp"
#include "deltaflow/bench/latency.hpp"
#include "deltaflow/bench/pipelines.hpp"
#include "deltaflow/bench/runner.hpp"
#include "deltaflow/connectors/jsonl.hpp"
#include "deltaflow/core/key.hpp"
#include "deltaflow/engine/engine.hpp"
#include "support/helpers.hpp"
#include "support/latency_cases.hpp"
#include "support/oracles.hpp"

namespace {

using namespace deltaflow;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

enum class Verdict { Pass, Fail, Skip };

struct Outcome {
  Verdict verdict = Verdict::Pass;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* format, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, value);
  return buf;
}

// Every streaming run's sink updates, kept for the consistency scan.
std::vector<std::pair<std::string, std::vector<Update>>> g_streaming_runs;

void keep_for_scan(std::string label, std::vector<Update> updates) {
  g_streaming_runs.emplace_back(std::move(label), std::move(updates));
}

struct Op {
  bool insert = true;
  Row row;
};

// Runs `ops` through a fresh engine. Streaming commits after every `every`
// data records; batch mode ignores commits and closes one epoch at the end.
std::vector<Update> run_ops(const OperatorGraph& graph, const std::string& sink, const std::vector<Op>& ops,
                            std::optional<std::size_t> every) {
  Engine engine(graph, {.mode = every ? RunMode::streaming() : RunMode::batch()});
  std::vector<EpochResult> results;
  std::size_t since = 0;
  for (const auto& op : ops) {
    if (op.insert) {
      engine.insert(0, op.row);
    } else {
      engine.erase(0, op.row);
    }
    if (every && ++since == *every) {
      auto r = engine.commit(0);
      results.insert(results.end(), r.begin(), r.end());
      since = 0;
    }
  }
  auto r = engine.finish();
  results.insert(results.end(), r.begin(), r.end());
  return testing::sink_updates(results, sink);
}

// Inserts with occasional deletes of a live row.
template <typename MakeRow>
std::vector<Op> random_ops(std::mt19937_64& rng, std::size_t n, MakeRow make_row) {
  std::vector<Op> ops;
  std::vector<Row> live;
  for (std::size_t i = 0; i < n; ++i) {
    if (!live.empty() && rng() % 10 == 0) {
      std::size_t at = rng() % live.size();
      ops.push_back({false, live[at]});
      live[at] = live.back();
      live.pop_back();
    } else {
      live.push_back(make_row());
      ops.push_back({true, live.back()});
    }
  }
  return ops;
}

Outcome criterion_1() {
  const auto start = Clock::now();
  std::mt19937_64 rng(101);
  const std::vector<std::size_t> policies{1, 37, 1000};
  std::size_t runs = 0;
  std::size_t mismatches = 0;
  std::string first_mismatch;

  auto check = [&](const std::string& label, const OperatorGraph& graph, const std::string& sink,
                   const std::vector<Op>& ops) {
    const auto batch = testing::accumulate(run_ops(graph, sink, ops, std::nullopt));
    for (std::size_t every : policies) {
      auto updates = run_ops(graph, sink, ops, every);
      ++runs;
      if (testing::accumulate(updates) != batch) {
        ++mismatches;
        if (first_mismatch.empty()) first_mismatch = label + " every-" + std::to_string(every);
      }
      keep_for_scan(label + " every-" + std::to_string(every), std::move(updates));
    }
  };

  const auto words_graph = bench::wordcount_graph();
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = 1 + rng() % 10000;
    const std::size_t dict = 1 + rng() % 300;
    auto dictionary = bench::make_dictionary(dict, 5, rng());
    auto ops = random_ops(rng, n, [&] { return Row{Value(dictionary[rng() % dict])}; });
    check("wordcount#" + std::to_string(i), words_graph, "counts", ops);
  }
  const auto rank_graph = bench::pagerank_graph(5);
  for (int i = 0; i < 20; ++i) {
    const std::size_t n = 1 + rng() % 2000;
    const std::size_t vertices = 2 + rng() % 400;
    auto ops = random_ops(rng, n, [&] {
      return Row{Value(std::to_string(rng() % vertices)), Value(std::to_string(rng() % vertices))};
    });
    check("edges#" + std::to_string(i), rank_graph, "ranks", ops);
  }

  const double elapsed = seconds_since(start);
  Outcome out;
  out.detail = std::to_string(runs) + " streaming runs vs batch, " + std::to_string(mismatches) + " mismatches, " +
               fmt("%.1f s", elapsed) + " (limit 120 s)";
  if (!first_mismatch.empty()) out.detail += "; first mismatch " + first_mismatch;
  if (mismatches > 0 || elapsed >= 120) out.verdict = Verdict::Fail;
  return out;
}

std::map<Key, std::int64_t> engine_ranks(const testing::EdgeList& edges) {
  std::vector<bench::Edge> list;
  for (const auto& [u, v] : edges) list.push_back({u, v});
  return bench::run_pagerank(list, bench::Scenario::PagerankBatch, 1).final_ranks;
}

Outcome criterion_2() {
  Outcome out;
  std::vector<std::string> failures;

  const Key u = hash_key({Value("u")});
  const Key v = hash_key({Value("v")});
  auto single = engine_ranks({{"u", "v"}});
  if (single != std::map<Key, std::int64_t>{{u, 1000}, {v, 1833}}) failures.push_back("single edge");

  // Expected value as stated by the criterion.
  constexpr std::int64_t kStatedCycleRank = 5999;
  auto cycle = engine_ranks({{"a", "b"}, {"b", "c"}, {"c", "a"}});
  bool cycle_ok = cycle.size() == 3;
  std::int64_t got = cycle.empty() ? -1 : cycle.begin()->second;
  for (const auto& [k, r] : cycle) cycle_ok = cycle_ok && r == kStatedCycleRank;
  if (!cycle_ok) {
    failures.push_back("3-cycle expected all-" + std::to_string(kStatedCycleRank) + ", got all-" +
                       std::to_string(got) + " (oracle also gives " +
                       std::to_string(testing::oracle_pagerank({{"a", "b"}, {"b", "c"}, {"c", "a"}}).at("a")) +
                       ": (6000*5)//6 + 1000 = 6000)");
  }

  std::mt19937_64 rng(202);
  int random_bad = 0;
  for (int g = 0; g < 20; ++g) {
    const std::size_t n = 2 + rng() % 60;
    const std::size_t m = 1 + rng() % 500;
    testing::EdgeList edges;
    for (std::size_t i = 0; i < m; ++i) edges.emplace_back(std::to_string(rng() % n), std::to_string(rng() % n));
    if (engine_ranks(edges) != testing::oracle_pagerank_by_key(edges)) ++random_bad;
  }
  if (random_bad) failures.push_back(std::to_string(random_bad) + "/20 random graphs differ from oracle");

  out.detail = "single edge {u:1000, v:1833} " + std::string(failures.empty() || failures[0] != "single edge" ? "ok" : "BAD") +
               "; 20 random graphs " + (random_bad ? "BAD" : "ok");
  if (!failures.empty()) {
    out.verdict = Verdict::Fail;
    for (const auto& f : failures) out.detail += "; " + f;
  }
  return out;
}

// Shared by criteria 3, 4 and 5.
struct PagerankFixture {
  std::vector<bench::Edge> edges;
  std::string source;
};

PagerankFixture pagerank_edges() {
  PagerankFixture f;
  if (const char* path = std::getenv("DELTAFLOW_EDGES"); path && fs::exists(path)) {
    f.edges = bench::load_edges(path, 20000);
    f.source = std::string("first 20000 edges of ") + path;
  } else {
    f.edges = bench::gen_powerlaw_edges({.num_edges = 20000, .seed = 1});
    f.source = "seeded synthetic power-law graph, 20000 edges";
  }
  return f;
}

testing::EdgeList head(const std::vector<bench::Edge>& edges, std::size_t n) {
  testing::EdgeList out;
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(edges[i].u, edges[i].v);
  return out;
}

std::vector<bench::Edge> head_edges(const std::vector<bench::Edge>& edges, std::size_t n) {
  return {edges.begin(), edges.begin() + static_cast<long>(n)};
}

struct StreamMeasurement {
  double streaming_ms = 0;
  double summed_batch_ms = 0;
};

Outcome criterion_3(const PagerankFixture& f, StreamMeasurement& m) {
  const auto start = Clock::now();
  auto stream = bench::run_pagerank(f.edges, bench::Scenario::PagerankStream, 1, 1000);
  m.streaming_ms = stream.runtime_ms;
  auto snapshots = bench::rank_snapshots(stream.updates);
  auto prefixes = bench::epoch_prefixes(f.edges.size(), bench::Scenario::PagerankStream, 1000);
  keep_for_scan("pagerank-stream", stream.updates);

  std::size_t bad = 0;
  std::size_t oracle_bad = 0;
  for (std::size_t i = 0; i < prefixes.size(); ++i) {
    auto batch = bench::run_pagerank(head_edges(f.edges, prefixes[i]), bench::Scenario::PagerankBatch, 1);
    m.summed_batch_ms += batch.runtime_ms;
    if (i >= snapshots.size() || snapshots[i].second != batch.final_ranks) ++bad;
    if (i >= snapshots.size() || snapshots[i].second != testing::oracle_pagerank_by_key(head(f.edges, prefixes[i]))) {
      ++oracle_bad;
    }
  }
  const double elapsed = seconds_since(start);
  Outcome out;
  out.detail = f.source + "; " + std::to_string(snapshots.size()) + " commits, " + std::to_string(bad) +
               " differ from batch, " + std::to_string(oracle_bad) + " differ from oracle, " +
               fmt("%.1f s", elapsed) + " (limit 300 s)";
  if (snapshots.size() != 20 || bad || oracle_bad || elapsed >= 300) out.verdict = Verdict::Fail;
  return out;
}

Outcome criterion_4(const PagerankFixture& f) {
  constexpr int kRepeats = 3;
  const std::size_t prefix = bench::backfill_count(f.edges.size(), 0.9);
  auto full_batch = bench::run_pagerank(f.edges, bench::Scenario::PagerankBatch, 1);
  std::vector<double> epoch0_ms;
  std::vector<double> batch_ms;
  bool equal = true;
  for (int r = 0; r < kRepeats; ++r) {
    auto backfill = bench::run_pagerank(f.edges, bench::Scenario::PagerankBackfill, 1, 1000, 0.9);
    equal = equal && backfill.final_ranks == full_batch.final_ranks && backfill.epochs.size() == 3;
    if (!backfill.epochs.empty()) epoch0_ms.push_back(backfill.epochs.front().wall_ms);
    if (r == 0) keep_for_scan("pagerank-backfill", backfill.updates);
    auto same_edges = bench::run_pagerank(head_edges(f.edges, prefix), bench::Scenario::PagerankBatch, 1);
    batch_ms.push_back(same_edges.epochs.front().wall_ms);
  }
  std::sort(epoch0_ms.begin(), epoch0_ms.end());
  std::sort(batch_ms.begin(), batch_ms.end());
  const double e0 = epoch0_ms[kRepeats / 2];
  const double b = batch_ms[kRepeats / 2];
  Outcome out;
  out.detail = std::string("final ranks ") + (equal ? "equal" : "DIFFER") + " to pure batch; epoch 0 (" +
               std::to_string(prefix) + " edges) " + fmt("%.0f ms", e0) + " vs batch on same edges " +
               fmt("%.0f ms", b) + ", ratio " + fmt("%.2f", e0 / b) + " (limit 2.00)";
  if (!equal || e0 > 2 * b) out.verdict = Verdict::Fail;
  return out;
}

Outcome criterion_5(const StreamMeasurement& m) {
  const double ratio = m.streaming_ms / m.summed_batch_ms;
  Outcome out;
  out.detail = "streaming " + fmt("%.0f ms", m.streaming_ms) + " vs summed prefix batches " +
               fmt("%.0f ms", m.summed_batch_ms) + ", ratio " + fmt("%.3f", ratio) + " (limit 0.5)";
  if (!(ratio < 0.5)) out.verdict = Verdict::Fail;
  return out;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome criterion_6(const fs::path& work) {
  std::vector<std::string> failures;

  // Wordcount under the simulated clock: the raw logs are deterministic.
  bench::BenchConfig wc;
  wc.num_words = 50000;
  wc.dict_size = 500;
  wc.commit_every_ms = 10;
  wc.rate = 50000;
  wc.burn_in_ms = 200;
  wc.simulated_clock = true;
  auto words = bench::gen_words(wc.num_words, wc.dict_size, wc.word_len, wc.seed);
  std::vector<std::string> logs;
  for (std::size_t workers : {1, 1, 4}) {
    wc.workers = workers;
    fs::path dir = work / ("wordcount_" + std::to_string(logs.size()));
    fs::create_directories(dir);
    auto run = bench::run_wordcount(wc, words, dir.string());
    logs.push_back(slurp(dir / "output.log.jsonl"));
    if (run.consistency.violations) failures.push_back("wordcount consistency");
  }
  if (logs[0].empty() || logs[0] != logs[1]) failures.push_back("wordcount logs differ between identical runs");
  if (logs[0] != logs[2]) failures.push_back("wordcount W=1 vs W=4 outputs differ");

  // PageRank runs on the wall clock; the canonical log drops egress times.
  auto edges = bench::gen_powerlaw_edges({.num_edges = 5000, .seed = 6});
  const Schema ranks({{"rank", Type::Int}});
  std::vector<std::string> canonical;
  for (std::size_t workers : {1, 1, 4}) {
    auto run = bench::run_pagerank(edges, bench::Scenario::PagerankStream, workers, 500);
    fs::path path = work / ("pagerank_" + std::to_string(canonical.size()) + ".jsonl");
    connectors::write_jsonl_updates(run.updates, ranks, path.string(), 0);
    canonical.push_back(slurp(path));
    keep_for_scan("pagerank-stream W=" + std::to_string(workers), std::move(run.updates));
  }
  if (canonical[0].empty() || canonical[0] != canonical[1]) failures.push_back("pagerank logs differ between identical runs");
  if (canonical[0] != canonical[2]) failures.push_back("pagerank W=1 vs W=4 outputs differ");

  Outcome out;
  out.detail = "wordcount " + std::to_string(logs[0].size()) + " B and pagerank " + std::to_string(canonical[0].size()) +
               " B canonical logs compared across repeat and W=1/W=4";
  if (!failures.empty()) {
    out.verdict = Verdict::Fail;
    for (const auto& f : failures) out.detail += "; " + f;
  }
  return out;
}

Outcome criterion_7() {
  const unsigned cores = std::thread::hardware_concurrency();
  bench::BenchConfig c;
  c.num_words = 1'000'000;
  c.commit_every_records = 1000;
  auto words = bench::gen_words(c.num_words, c.dict_size, c.word_len, c.seed);
  c.workers = 1;
  const double w1 = bench::run_wordcount(c, words).throughput;
  c.workers = 4;
  const double w4 = bench::run_wordcount(c, words).throughput;
  const double ratio = w4 / w1;
  Outcome out;
  out.detail = "W=1 " + fmt("%.0f", w1) + " words/s, W=4 " + fmt("%.0f", w4) + " words/s, ratio " +
               fmt("%.2f", ratio) + " (limit 1.50) on " + std::to_string(cores) + " hardware threads";
  if (cores < 6) {
    out.verdict = Verdict::Skip;
    out.detail += "; requires a host with at least 6 cores";
  } else if (ratio < 1.5) {
    out.verdict = Verdict::Fail;
  }
  return out;
}

Outcome criterion_8() {
  auto cases = testing::latency_cases();
  std::vector<std::string> bad;
  for (const auto& c : cases) {
    auto match = bench::match_latencies(c.inputs, c.outputs);
    auto report = bench::latency_report(c.inputs, match);
    bool ok = match.latency_ms == c.latencies && report.burn_in == c.burn_in &&
              report.percentiles.has_value() == c.percentiles.has_value();
    if (ok && c.percentiles) {
      ok = report.percentiles->p80 == c.percentiles->p80 && report.percentiles->p90 == c.percentiles->p90 &&
           report.percentiles->p95 == c.percentiles->p95 && report.percentiles->p99 == c.percentiles->p99;
    }
    if (!ok) bad.push_back(c.name);
  }
  Outcome out;
  out.detail = std::to_string(cases.size() - bad.size()) + "/" + std::to_string(cases.size()) + " log pairs exact";
  if (cases.size() != 10 || !bad.empty()) {
    out.verdict = Verdict::Fail;
    for (const auto& b : bad) out.detail += "; mismatch in '" + b + "'";
  }
  return out;
}

Outcome criterion_9() {
  std::uint64_t epochs = 0;
  std::uint64_t updates = 0;
  std::uint64_t violations = 0;
  std::size_t runs = 0;
  std::string first;
  for (const auto& [label, run] : g_streaming_runs) {
    if (run.empty()) continue;
    ++runs;
    auto scan = bench::scan_consistency(run);
    epochs += scan.epochs;
    updates += scan.updates;
    // Test-side check: consolidated within each epoch.
    std::map<Epoch, std::vector<Update>> by_epoch;
    for (const auto& u : run) by_epoch[u.epoch].push_back(u);
    std::uint64_t local = 0;
    for (const auto& [e, batch] : by_epoch) local += testing::is_consolidated(batch) ? 0 : 1;
    violations += std::max<std::uint64_t>(scan.violations, local);
    if ((scan.violations || local) && first.empty()) first = label;
  }
  Outcome out;
  out.detail = std::to_string(runs) + " streaming runs, " + std::to_string(epochs) + " epochs, " +
               std::to_string(updates) + " updates scanned, " + std::to_string(violations) + " violations";
  if (!first.empty()) out.detail += "; first in " + first;
  if (violations || runs == 0) out.verdict = Verdict::Fail;
  return out;
}

const char* name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Skip: return "SKIP";
  }
  return "?";
}

}  // namespace

int main() {
  const fs::path work = fs::temp_directory_path() / "deltaflow_acceptance";
  fs::remove_all(work);
  fs::create_directories(work);

  const auto fixture = pagerank_edges();
  StreamMeasurement measurement;

  std::vector<std::pair<int, std::function<Outcome()>>> criteria{
      {1, criterion_1},
      {2, criterion_2},
      {3, [&] { return criterion_3(fixture, measurement); }},
      {4, [&] { return criterion_4(fixture); }},
      {5, [&] { return criterion_5(measurement); }},
      {6, [&] { return criterion_6(work); }},
      {7, criterion_7},
      {8, criterion_8},
      {9, criterion_9},
  };

  int failed = 0;
  for (auto& [n, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {Verdict::Fail, std::string("error: ") + e.what()};
    }
    if (o.verdict == Verdict::Fail) ++failed;
    std::printf("criterion %d: %s %s\n", n, name(o.verdict), o.detail.c_str());
    std::fflush(stdout);
  }
  fs::remove_all(work);
  return failed ? 1 : 0;
}
