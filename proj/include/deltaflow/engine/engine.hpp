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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "deltaflow/core/update.hpp"
#include "deltaflow/engine/frontier.hpp"
#include "deltaflow/graph/operator_graph.hpp"

namespace deltaflow {

/// How input commits map onto epochs. All modes run the same graph.
struct RunMode {
  enum class Kind { Batch, Streaming, Backfill };
  Kind kind = Kind::Streaming;
  /// Backfill: per source, the first `backfill_records` data records form
  /// epoch 0 (commits inside the prefix are ignored).
  std::uint64_t backfill_records = 0;

  static RunMode batch() { return {Kind::Batch, 0}; }
  static RunMode streaming() { return {Kind::Streaming, 0}; }
  static RunMode backfill(std::uint64_t records) { return {Kind::Backfill, records}; }
};

std::string_view run_mode_name(RunMode::Kind kind);

/// Monotonic time source shared by sources and sinks (milliseconds since
/// run start).
class Clock {
 public:
  virtual ~Clock() = default;
  virtual std::int64_t now_us() const = 0;
  /// Blocks (or, for simulated clocks, jumps) until `us`.
  virtual void sleep_until(std::int64_t us) = 0;
  std::int64_t now_ms() const { return now_us() / 1000; }
};

struct EngineOptions {
  std::size_t workers = 1;
  RunMode mode = RunMode::streaming();
  /// Verify declared universe relations against runtime key sets after every
  /// epoch. Costs a full key-set per node.
  bool check_universes = false;
  /// Source of EpochResult::time_ms; null means 0.
  Clock* clock = nullptr;
};

struct SinkBatch {
  NodeId sink = 0;
  std::string name;
  /// Consolidated, sorted by (key, row).
  std::vector<Update> updates;
};

struct EpochCounters {
  std::uint64_t updates_in = 0;
  std::uint64_t updates_out = 0;
  std::uint64_t arrangement_rows = 0;
  /// Updates consumed by operators, summed over all operators.
  std::uint64_t row_touches = 0;
  double wall_ms = 0;
};

struct EpochResult {
  Epoch epoch = 0;
  std::int64_t time_ms = 0;
  std::vector<SinkBatch> sinks;
  EpochCounters counters;

  /// nullptr if no sink has that name.
  const SinkBatch* sink(std::string_view name) const;
};

/// Receives every sink's per-epoch updates, including empty epochs.
class SinkWriter {
 public:
  virtual ~SinkWriter() = default;
  virtual void write(const OperatorNode& sink, Epoch epoch, std::int64_t time_ms,
                     std::span<const Update> updates) = 0;
  virtual void finish() {}
};

namespace detail {
class Runtime;
}

/// Executes an OperatorGraph incrementally.
///
/// Data pushed into a source belongs to that source's open epoch. A commit
/// closes it; once every source has committed epoch e, the engine runs e
/// through the graph in topological order and hands each sink exactly the
/// consolidated change of its table between e-1 and e. Operator errors are
/// fail-stop: the engine rethrows them and refuses further input.
class Engine {
 public:
  explicit Engine(OperatorGraph graph, EngineOptions options = {});
  ~Engine();
  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  const OperatorGraph& graph() const { return graph_; }
  const EngineOptions& options() const { return options_; }

  std::size_t source_index(std::string_view name) const;

  void insert(std::size_t source, Row row);
  void erase(std::size_t source, Row row);
  std::vector<EpochResult> commit(std::size_t source);

  /// End of input: commits outstanding data and aligns all sources so every
  /// pending epoch closes. Further input is rejected.
  std::vector<EpochResult> finish();

  /// Writers are called for their sink on every closed epoch, in sink order.
  void attach(std::string_view sink_name, std::shared_ptr<SinkWriter> writer);

  /// Called with every EpochResult as it is produced.
  void on_epoch(std::function<void(const EpochResult&)> callback) { callback_ = std::move(callback); }

  const Frontier& frontier() const { return frontier_; }
  bool finished() const { return finished_; }

 private:
  struct SourceState;

  void check_usable() const;
  void stage(std::size_t source, Update update);
  std::vector<EpochResult> advance(std::size_t source);
  EpochResult run_epoch(Epoch epoch);
  void check_universes(Epoch epoch);

  OperatorGraph graph_;
  EngineOptions options_;
  Frontier frontier_;
  std::vector<std::unique_ptr<SourceState>> sources_;
  // epoch -> per-source staged updates
  std::map<Epoch, std::vector<std::vector<Update>>> pending_;
  // Accumulated key multiplicities per node, only with check_universes.
  std::vector<std::unordered_map<Key, Diff, KeyHasher>> key_sets_;
  std::vector<std::vector<std::shared_ptr<SinkWriter>>> writers_;
  std::unique_ptr<detail::Runtime> runtime_;
  std::function<void(const EpochResult&)> callback_;
  bool finished_ = false;
  bool poisoned_ = false;
};

/// One source's input for run(): inserts/deletes and commit points.
struct SourceInput {
  enum class Kind { Insert, Erase, Commit };
  struct Item {
    Kind kind;
    Row row;
  };
  std::string source;
  std::vector<Item> items;
};

/// Runs a whole bounded input through a fresh engine. Sources are fed
/// round-robin one commit window at a time so multi-source epochs align.
std::vector<EpochResult> run(const OperatorGraph& graph, const EngineOptions& options,
                             const std::vector<SourceInput>& inputs);

}  // namespace deltaflow
