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

#include "deltaflow/bench/runner.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <memory>
#include <thread>

#include <nlohmann/json.hpp>

#include "deltaflow/bench/pipelines.hpp"
#include "deltaflow/connectors/clock.hpp"
#include "deltaflow/connectors/jsonl.hpp"
#include "deltaflow/connectors/replay.hpp"
#include "deltaflow/connectors/sinks.hpp"
#include "deltaflow/core/errors.hpp"

namespace deltaflow::bench {

namespace {

using connectors::StreamRecord;
using connectors::TimestampedRecord;
using Millis = std::chrono::duration<double, std::milli>;

constexpr std::pair<Scenario, std::string_view> kScenarios[] = {
    {Scenario::Wordcount, "wordcount"},
    {Scenario::PagerankBatch, "pagerank-batch"},
    {Scenario::PagerankStream, "pagerank-stream"},
    {Scenario::PagerankBackfill, "pagerank-backfill"},
};

std::string join_path(const std::string& dir, const std::string& file) {
  if (dir.empty() || dir.back() == '/') return dir + file;
  return dir + "/" + file;
}

class WordSinkWriter final : public SinkWriter {
 public:
  explicit WordSinkWriter(WordcountRun& run) : run_(run) {}
  void write(const OperatorNode&, Epoch, std::int64_t time_ms, std::span<const Update> updates) override {
    ++run_.epochs;
    run_.output_updates += updates.size();
    scan_epoch(updates, run_.consistency);
    for (const auto& u : updates) {
      const auto& word = u.row[0].as_string();
      const std::int64_t count = u.row[1].as_int();
      mult_[{word, count}] += u.diff;
      if (u.diff > 0) run_.outputs.push_back(OutputEvent{word, count, time_ms});
    }
  }
  std::map<std::string, std::int64_t> table() const {
    std::map<std::string, std::int64_t> out;
    for (const auto& [entry, m] : mult_) {
      if (m == 0) continue;
      if (m != 1 || !out.emplace(entry.first, entry.second).second) {
        throw Error("wordcount output is not a keyed map at word '" + entry.first + "'");
      }
    }
    return out;
  }

 private:
  WordcountRun& run_;
  std::map<std::pair<std::string, std::int64_t>, Diff> mult_;
};

class CollectUpdates final : public SinkWriter {
 public:
  explicit CollectUpdates(std::vector<Update>& out) : out_(out) {}
  void write(const OperatorNode&, Epoch, std::int64_t, std::span<const Update> updates) override {
    out_.insert(out_.end(), updates.begin(), updates.end());
  }

 private:
  std::vector<Update>& out_;
};

connectors::CommitPolicy wordcount_policy(const BenchConfig& config) {
  if (config.commit_every_records && config.commit_every_ms) {
    throw Error("choose one of commit-every-records and commit-every-ms");
  }
  if (config.commit_every_ms) return connectors::CommitPolicy::every_millis(*config.commit_every_ms);
  return connectors::CommitPolicy::every_n_records(config.commit_every_records.value_or(1000));
}

}  // namespace

std::string_view scenario_name(Scenario scenario) {
  for (const auto& [s, name] : kScenarios) {
    if (s == scenario) return name;
  }
  return "?";
}

std::optional<Scenario> parse_scenario(std::string_view name) {
  for (const auto& [s, n] : kScenarios) {
    if (n == name) return s;
  }
  return std::nullopt;
}

WordcountRun run_wordcount(const BenchConfig& config, const std::vector<std::string>& words,
                           const std::string& log_dir) {
  WordcountRun run;
  run.words = words.size();
  run.inputs.reserve(words.size());

  std::unique_ptr<Clock> clock;
  if (config.simulated_clock) {
    clock = std::make_unique<connectors::SimulatedClock>();
  } else {
    clock = std::make_unique<connectors::SteadyClock>();
  }

  Engine engine(wordcount_graph(SinkSpec::collect("counts")),
                EngineOptions{config.workers, RunMode::streaming(), false, clock.get()});
  auto sink = std::make_shared<WordSinkWriter>(run);
  engine.attach("counts", sink);
  std::shared_ptr<connectors::JsonlUpdateWriter> output_log;
  std::ofstream input_log;
  if (!log_dir.empty()) {
    output_log = std::make_shared<connectors::JsonlUpdateWriter>(join_path(log_dir, "output.log.jsonl"));
    engine.attach("counts", output_log);
    input_log.open(join_path(log_dir, "input.log.jsonl"));
    if (!input_log) throw Error("cannot open input log in " + log_dir);
  }

  std::vector<StreamRecord> records;
  records.reserve(words.size());
  for (const auto& w : words) records.push_back(StreamRecord::insert({Value(w)}));
  connectors::ReplaySpec replay{config.rate, config.burn_in_ms, config.burn_in_start, 10, config.seed};
  connectors::TimedSource timed(std::make_unique<connectors::VectorSource>(std::move(records)), replay,
                                wordcount_policy(config), *clock);

  const std::size_t source = engine.source_index("words");
  auto consume = [&](const TimestampedRecord& r) {
    if (r.record.is_data()) {
      const auto& word = r.record.values[0].as_string();
      run.inputs.push_back(InputEvent{word, r.ingress_ms, r.burn_in});
      if (input_log) {
        input_log << nlohmann::ordered_json{{"word", word}, {"_time_ms", r.ingress_ms}, {"_burn_in", r.burn_in}}.dump()
                  << '\n';
      }
    } else if (input_log) {
      input_log << nlohmann::ordered_json{{"_action", "commit"}, {"_time_ms", r.ingress_ms}}.dump() << '\n';
    }
    connectors::feed(engine, source, r.record);
  };

  auto started = std::chrono::steady_clock::now();
  if (config.simulated_clock) {
    while (auto r = timed.next()) consume(*r);
  } else {
    connectors::BoundedQueue<TimestampedRecord> queue(1 << 16);
    std::exception_ptr producer_error;
    std::thread producer([&] {
      try {
        while (auto r = timed.next()) {
          if (!queue.push(std::move(*r))) break;
        }
      } catch (...) {
        producer_error = std::current_exception();
      }
      queue.close();
    });
    try {
      while (auto r = queue.pop()) consume(*r);
    } catch (...) {
      queue.close();
      producer.join();
      throw;
    }
    producer.join();
    if (producer_error) std::rethrow_exception(producer_error);
  }
  engine.finish();
  run.runtime_ms = Millis(std::chrono::steady_clock::now() - started).count();
  run.throughput = run.runtime_ms > 0 ? static_cast<double>(run.words) / (run.runtime_ms / 1000.0) : 0;
  if (input_log) {
    input_log.flush();
    if (!input_log) throw Error("write failed: input log");
  }

  run.latency = latency_report(run.inputs, match_latencies(run.inputs, run.outputs));
  run.final_counts = sink->table();
  return run;
}

PagerankRun run_pagerank(const std::vector<Edge>& edges, Scenario scenario, std::size_t workers,
                         std::size_t batch_size, double backfill_fraction, int steps, const std::string& log_dir) {
  RunMode mode = RunMode::batch();
  std::vector<StreamRecord> records;
  switch (scenario) {
    case Scenario::PagerankBatch:
      records = gen_edge_stream(edges, edges.size() ? edges.size() : 1, 1.0);
      break;
    case Scenario::PagerankStream:
      mode = RunMode::streaming();
      records = gen_edge_stream(edges, batch_size, 0.0);
      break;
    case Scenario::PagerankBackfill:
      mode = RunMode::backfill(backfill_count(edges.size(), backfill_fraction));
      records = gen_edge_stream(edges, batch_size, backfill_fraction);
      break;
    case Scenario::Wordcount: throw Error("run_pagerank: not a pagerank scenario");
  }

  connectors::SteadyClock clock;
  Engine engine(pagerank_graph(steps, SinkSpec::collect("ranks")), EngineOptions{workers, mode, false, &clock});
  PagerankRun run;
  engine.attach("ranks", std::make_shared<CollectUpdates>(run.updates));
  if (!log_dir.empty()) {
    engine.attach("ranks", std::make_shared<connectors::JsonlUpdateWriter>(join_path(log_dir, "output.log.jsonl")));
    std::ofstream input_log(join_path(log_dir, "input.log.jsonl"));
    const Schema schema = edges_schema();
    for (const auto& r : records) input_log << connectors::format_jsonl_record(r, schema) << '\n';
    if (!input_log) throw Error("write failed: input log in " + log_dir);
  }
  engine.on_epoch([&](const EpochResult& r) {
    run.epochs.push_back(EpochStat{r.epoch, r.counters.wall_ms, r.counters.updates_in, r.counters.updates_out,
                                   r.counters.row_touches, r.counters.arrangement_rows});
  });

  const std::size_t source = engine.source_index("edges");
  auto started = std::chrono::steady_clock::now();
  for (const auto& r : records) connectors::feed(engine, source, r);
  engine.finish();
  run.runtime_ms = Millis(std::chrono::steady_clock::now() - started).count();

  auto snapshots = rank_snapshots(run.updates);
  if (!snapshots.empty()) run.final_ranks = std::move(snapshots.back().second);
  return run;
}

std::vector<std::size_t> epoch_prefixes(std::size_t num_edges, Scenario scenario, std::size_t batch_size,
                                        double backfill_fraction) {
  std::vector<std::size_t> out;
  if (scenario == Scenario::PagerankBatch) return {num_edges};
  if (batch_size == 0) throw Error("batch size must be positive");
  std::size_t done = scenario == Scenario::PagerankBackfill ? backfill_count(num_edges, backfill_fraction) : 0;
  if (done > 0) out.push_back(done);
  while (done < num_edges) {
    done = std::min(num_edges, done + batch_size);
    out.push_back(done);
  }
  if (out.empty()) out.push_back(0);
  return out;
}

std::vector<std::pair<Epoch, std::map<Key, std::int64_t>>> rank_snapshots(const std::vector<Update>& updates) {
  std::map<Epoch, std::vector<const Update*>> by_epoch;
  for (const auto& u : updates) by_epoch[u.epoch].push_back(&u);

  std::vector<std::pair<Epoch, std::map<Key, std::int64_t>>> out;
  std::map<Key, std::int64_t> current;
  for (const auto& [epoch, batch] : by_epoch) {
    for (const Update* u : batch) {
      if (u->diff >= 0) continue;
      auto it = current.find(u->key);
      if (it == current.end() || it->second != u->row[0].as_int()) {
        throw Error("rank log retracts a row that is not present at key " + u->key.hex());
      }
      current.erase(it);
    }
    for (const Update* u : batch) {
      if (u->diff <= 0) continue;
      if (!current.emplace(u->key, u->row[0].as_int()).second) {
        throw Error("rank log inserts a second row at key " + u->key.hex());
      }
    }
    out.emplace_back(epoch, current);
  }
  return out;
}

void scan_epoch(std::span<const Update> batch, ConsistencyScan& scan) {
  ++scan.epochs;
  scan.updates += batch.size();
  std::map<std::pair<Key, Row>, int> signs;
  for (const auto& u : batch) {
    int& s = signs[{u.key, u.row}];
    s |= u.diff > 0 ? 1 : 2;
  }
  for (const auto& [_, s] : signs) {
    if (s == 3) ++scan.violations;
  }
}

ConsistencyScan scan_consistency(const std::vector<Update>& updates) {
  std::map<Epoch, std::vector<Update>> by_epoch;
  for (const auto& u : updates) by_epoch[u.epoch].push_back(u);
  ConsistencyScan scan;
  for (const auto& [_, batch] : by_epoch) scan_epoch(batch, scan);
  return scan;
}

ConsistencyScan scan_consistency_log(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::map<std::uint64_t, std::map<std::pair<std::string, std::string>, int>> epochs;
  ConsistencyScan scan;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    try {
      auto j = nlohmann::json::parse(line);
      auto& s = epochs[j.at("epoch").get<std::uint64_t>()][{j.at("key").get<std::string>(), j.at("data").dump()}];
      s |= j.at("diff").get<std::int64_t>() > 0 ? 1 : 2;
      ++scan.updates;
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(number, e.what());
    }
  }
  scan.epochs = epochs.size();
  for (const auto& [_, rows] : epochs) {
    for (const auto& [__, s] : rows) {
      if (s == 3) ++scan.violations;
    }
  }
  return scan;
}

}  // namespace deltaflow::bench
