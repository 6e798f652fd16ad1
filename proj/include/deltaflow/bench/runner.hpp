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

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "deltaflow/bench/datasets.hpp"
#include "deltaflow/bench/latency.hpp"
#include "deltaflow/core/update.hpp"
#include "deltaflow/engine/engine.hpp"

namespace deltaflow::bench {

enum class Scenario { Wordcount, PagerankBatch, PagerankStream, PagerankBackfill };

std::string_view scenario_name(Scenario scenario);
std::optional<Scenario> parse_scenario(std::string_view name);

struct BenchConfig {
  Scenario scenario = Scenario::Wordcount;
  std::size_t workers = 1;
  /// At most one of the two is set; neither means every 1000 records.
  std::optional<std::uint64_t> commit_every_records;
  std::optional<std::int64_t> commit_every_ms;
  std::uint64_t seed = 1;
  /// Words JSONL or edge file; empty generates a dataset from the seed.
  std::string dataset;
  std::size_t batch_size = 1000;
  double backfill_fraction = 0.9;
  int repeat = 5;
  std::string out_dir;
  bool verify = false;

  std::size_t num_words = 1'000'000;
  std::size_t dict_size = 5000;
  std::size_t word_len = 7;
  /// Replay rate in words per second; 0 is unpaced.
  double rate = 0;
  std::int64_t burn_in_ms = 0;
  double burn_in_start = 0.1;
  bool simulated_clock = false;

  std::size_t num_edges = 20000;
  std::size_t num_vertices = 0;
  EdgeOrder edge_order = EdgeOrder::BySource;
  int steps = 5;
};

/// Result of scanning an update stream for same-epoch insert and retraction
/// of one (key, row).
struct ConsistencyScan {
  std::uint64_t epochs = 0;
  std::uint64_t updates = 0;
  std::uint64_t violations = 0;
};

/// Adds one epoch's sink batch to `scan`.
void scan_epoch(std::span<const Update> batch, ConsistencyScan& scan);

struct WordcountRun {
  double runtime_ms = 0;
  /// Words per second over the whole run.
  double throughput = 0;
  std::uint64_t words = 0;
  std::uint64_t epochs = 0;
  std::uint64_t output_updates = 0;
  std::vector<InputEvent> inputs;
  std::vector<OutputEvent> outputs;
  LatencyReport latency;
  /// Computed on the fly over every emitted epoch.
  ConsistencyScan consistency;
  std::map<std::string, std::int64_t> final_counts;
};

/// Streams `words` through the wordcount graph. When `log_dir` is non-empty
/// writes input.log.jsonl and output.log.jsonl there.
WordcountRun run_wordcount(const BenchConfig& config, const std::vector<std::string>& words,
                           const std::string& log_dir = {});

struct EpochStat {
  Epoch epoch = 0;
  double wall_ms = 0;
  std::uint64_t updates_in = 0;
  std::uint64_t updates_out = 0;
  std::uint64_t row_touches = 0;
  std::uint64_t arrangement_rows = 0;
};

struct PagerankRun {
  double runtime_ms = 0;
  std::vector<EpochStat> epochs;
  std::vector<Update> updates;
  std::map<Key, std::int64_t> final_ranks;
};

/// Runs the PageRank graph over `edges`. Batch mode uses one epoch; stream
/// commits every `batch_size` edges; backfill puts the first
/// backfill_count(E, fraction) edges in epoch 0 and streams the rest.
PagerankRun run_pagerank(const std::vector<Edge>& edges, Scenario scenario, std::size_t workers,
                         std::size_t batch_size = 1000, double backfill_fraction = 0.9, int steps = 5,
                         const std::string& log_dir = {});

/// Number of edges in the input after each epoch of a run_pagerank scenario.
std::vector<std::size_t> epoch_prefixes(std::size_t num_edges, Scenario scenario, std::size_t batch_size = 1000,
                                        double backfill_fraction = 0.9);

/// Accumulated ranks after each epoch present in `updates`, in epoch order.
std::vector<std::pair<Epoch, std::map<Key, std::int64_t>>> rank_snapshots(const std::vector<Update>& updates);

ConsistencyScan scan_consistency(const std::vector<Update>& updates);
/// Same check on an output JSONL log, without a schema.
ConsistencyScan scan_consistency_log(const std::string& path);

}  // namespace deltaflow::bench
