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

#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "deltaflow/bench/datasets.hpp"
#include "deltaflow/bench/oracle.hpp"
#include "deltaflow/bench/report.hpp"
#include "deltaflow/bench/runner.hpp"
#include "deltaflow/core/errors.hpp"

namespace {

using namespace deltaflow;
using namespace deltaflow::bench;

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
  if (!out) throw Error("write failed: " + path);
}

// Snapshot i must equal the oracle on the first prefixes[epoch] edges.
bool verify_pagerank(const PagerankRun& run, const std::vector<Edge>& edges, const BenchConfig& c,
                     std::vector<std::string>& notes) {
  auto prefixes = epoch_prefixes(edges.size(), c.scenario, c.batch_size, c.backfill_fraction);
  auto snapshots = rank_snapshots(run.updates);
  std::map<Key, std::int64_t> current;
  std::size_t next = 0;
  bool ok = true;
  for (std::size_t e = 0; e < prefixes.size(); ++e) {
    while (next < snapshots.size() && snapshots[next].first <= e) current = snapshots[next++].second;
    std::vector<Edge> prefix(edges.begin(), edges.begin() + static_cast<std::ptrdiff_t>(prefixes[e]));
    if (current != pagerank_reference_by_key(prefix, c.steps)) {
      notes.push_back("epoch " + std::to_string(e) + ": ranks differ from the reference on " +
                      std::to_string(prefixes[e]) + " edges");
      ok = false;
    }
  }
  return ok;
}

int run_bench(BenchConfig c) {
  if (!c.out_dir.empty()) std::filesystem::create_directories(c.out_dir);
  if (c.repeat < 1) throw Error("--repeat must be at least 1");
  BenchReport report;
  report.config = c;
  bool ok = true;

  if (c.scenario == Scenario::Wordcount) {
    auto words = c.dataset.empty() ? gen_words(c.num_words, c.dict_size, c.word_len, c.seed)
                                   : read_words_jsonl(c.dataset);
    std::map<std::string, std::int64_t> expected;
    if (c.verify) expected = count_words(words);
    for (int i = 0; i < c.repeat; ++i) {
      auto run = run_wordcount(c, words, c.out_dir);
      report.runs.push_back(RunSummary{run.runtime_ms, run.throughput, run.epochs, run.output_updates,
                                       run.latency.percentiles, run.latency.matched, run.latency.unmatched,
                                       run.latency.burn_in});
      if (run.consistency.violations) {
        report.notes.push_back("run " + std::to_string(i + 1) + ": " + std::to_string(run.consistency.violations) +
                               " same-epoch insert/retract pairs");
        ok = false;
      }
      if (c.verify && run.final_counts != expected) {
        report.notes.push_back("run " + std::to_string(i + 1) + ": final counts differ from the reference");
        ok = false;
      }
    }
  } else {
    std::vector<Edge> edges;
    if (c.dataset.empty()) {
      edges = gen_powerlaw_edges(PowerLawSpec{c.num_edges, c.num_vertices, 1.0, c.seed, c.edge_order});
    } else {
      edges = load_edges(c.dataset, c.num_edges);
    }
    for (int i = 0; i < c.repeat; ++i) {
      auto run = run_pagerank(edges, c.scenario, c.workers, c.batch_size, c.backfill_fraction, c.steps, c.out_dir);
      RunSummary s;
      s.runtime_ms = run.runtime_ms;
      s.throughput = run.runtime_ms > 0 ? static_cast<double>(edges.size()) / (run.runtime_ms / 1000.0) : 0;
      s.epochs = run.epochs.size();
      s.output_updates = run.updates.size();
      report.runs.push_back(s);
      auto scan = scan_consistency(run.updates);
      if (scan.violations) {
        report.notes.push_back("run " + std::to_string(i + 1) + ": same-epoch insert/retract pairs");
        ok = false;
      }
      if (c.verify && !verify_pagerank(run, edges, c, report.notes)) ok = false;
    }
  }

  if (c.verify) report.verified = ok;
  const std::string text = report_to_text(report);
  if (!c.out_dir.empty()) {
    write_file(c.out_dir + "/report.json", report_to_json(report) + "\n");
    write_file(c.out_dir + "/report.txt", text);
  }
  std::cout << text;
  return c.verify && !ok ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deltaflow benchmark driver"};
  BenchConfig c;
  std::string scenario;
  std::uint64_t every_records = 0;
  std::int64_t every_ms = 0;

  app.add_option("scenario", scenario, "wordcount | pagerank-batch | pagerank-stream | pagerank-backfill")
      ->required();
  app.add_option("--workers", c.workers, "engine worker threads")->check(CLI::PositiveNumber);
  auto* records_opt = app.add_option("--commit-every-records", every_records, "wordcount: commit every N words")
                          ->check(CLI::PositiveNumber);
  app.add_option("--commit-every-ms", every_ms, "wordcount: commit every MS milliseconds")
      ->check(CLI::PositiveNumber)
      ->excludes(records_opt);
  app.add_option("--seed", c.seed, "dataset and replay seed");
  app.add_option("--dataset", c.dataset, "words JSONL, or edges as JSONL/SNAP text")->check(CLI::ExistingFile);
  app.add_option("--batch-size", c.batch_size, "pagerank: edges per streamed commit")->check(CLI::PositiveNumber);
  app.add_option("--backfill-fraction", c.backfill_fraction, "pagerank-backfill: share of edges in epoch 0")
      ->check(CLI::Range(0.0, 1.0));
  app.add_option("--repeat", c.repeat, "runs; medians are reported")->check(CLI::PositiveNumber);
  app.add_option("--out", c.out_dir, "output directory for logs and reports");
  app.add_flag("--verify", c.verify, "compare results with the reference implementations");
  app.add_option("--num-words", c.num_words, "generated words");
  app.add_option("--dict-size", c.dict_size, "distinct words");
  app.add_option("--word-len", c.word_len, "letters per word");
  app.add_option("--rate", c.rate, "replay rate in words/s (0 = unpaced)")->check(CLI::NonNegativeNumber);
  app.add_option("--burn-in-ms", c.burn_in_ms, "replay warm-up ramp length")->check(CLI::NonNegativeNumber);
  app.add_option("--burn-in-start", c.burn_in_start, "ramp start as a fraction of the rate")
      ->check(CLI::Range(0.0, 1.0));
  app.add_flag("--simulated-clock", c.simulated_clock, "deterministic clock instead of wall time");
  app.add_option("--num-edges", c.num_edges, "edges generated, or read from --dataset");
  app.add_option("--num-vertices", c.num_vertices, "vertex id space of the generated graph (0 = default)");
  std::string order = "by-source";
  app.add_option("--edge-order", order, "generated edge order")->check(CLI::IsMember({"by-source", "random"}));
  app.add_option("--steps", c.steps, "pagerank iterations")->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  auto parsed = parse_scenario(scenario);
  if (!parsed) {
    std::cerr << "unknown scenario '" << scenario << "'\n";
    return 2;
  }
  c.scenario = *parsed;
  c.edge_order = order == "random" ? EdgeOrder::Random : EdgeOrder::BySource;
  if (every_records) c.commit_every_records = every_records;
  if (every_ms) c.commit_every_ms = every_ms;

  try {
    return run_bench(c);
  } catch (const std::exception& e) {
    std::cerr << "bench: " << e.what() << "\n";
    return 2;
  }
}
