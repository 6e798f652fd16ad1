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

#include "deltaflow/engine/engine.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <unordered_map>

#include "deltaflow/core/errors.hpp"
#include "deltaflow/core/key.hpp"
#include "runtime.hpp"

namespace deltaflow {

namespace {

struct RowHasher {
  std::size_t operator()(const Row& row) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    auto mix = [&](std::size_t v) { h = (h ^ v) * 1099511628211ULL; };
    for (const auto& v : row) {
      mix(static_cast<std::size_t>(v.type()));
      switch (v.type()) {
        case Type::Int: mix(std::hash<std::int64_t>{}(v.as_int())); break;
        case Type::Float: mix(std::hash<double>{}(v.as_float())); break;
        case Type::String: mix(std::hash<std::string>{}(v.as_string())); break;
        case Type::Bool: mix(v.as_bool()); break;
        case Type::Key: mix(KeyHasher{}(v.as_key())); break;
        case Type::None: break;
      }
    }
    return h;
  }
};

}  // namespace

std::string_view run_mode_name(RunMode::Kind kind) {
  switch (kind) {
    case RunMode::Kind::Batch: return "batch";
    case RunMode::Kind::Streaming: return "streaming";
    case RunMode::Kind::Backfill: return "backfill";
  }
  return "?";
}

const SinkBatch* EpochResult::sink(std::string_view name) const {
  for (const auto& s : sinks) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

struct Engine::SourceState {
  NodeId node = 0;
  std::string name;
  std::vector<Column> columns;
  std::vector<std::size_t> key_columns;
  std::uint64_t next_seq = 0;
  std::uint64_t data_records = 0;
  Epoch open_epoch = 0;
  bool dirty = false;
  // Shadow index of live rows, used to validate deletes and find their keys.
  std::unordered_map<Key, Row, KeyHasher> live;
  std::unordered_map<Row, std::vector<Key>, RowHasher> live_by_row;

  void check_row(const Row& row) const {
    if (row.size() != columns.size()) {
      throw ProtocolError("source '" + name + "': expected " + std::to_string(columns.size()) +
                          " values, got " + std::to_string(row.size()));
    }
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (row[i].type() != columns[i].type) {
        throw ProtocolError("source '" + name + "': column '" + columns[i].name + "' expects " +
                            std::string(type_name(columns[i].type)) + ", got " +
                            std::string(type_name(row[i].type())));
      }
    }
  }

  Key key_of(const Row& row) const {
    Row values;
    values.reserve(key_columns.size());
    for (auto c : key_columns) values.push_back(row[c]);
    return hash_key(values);
  }
};

Engine::Engine(OperatorGraph graph, EngineOptions options)
    : graph_(std::move(graph)), options_(options), frontier_(graph_.sources().size()) {
  if (options_.workers == 0) throw Error("engine needs at least one worker");
  for (auto id : graph_.sources()) {
    auto state = std::make_unique<SourceState>();
    const auto& node = graph_.node(id);
    const auto& params = std::get<SourceParams>(node.params);
    state->node = id;
    state->name = params.name;
    state->columns = node.schema.columns();
    state->key_columns = params.key_columns;
    sources_.push_back(std::move(state));
  }
  writers_.resize(graph_.sinks().size());
  runtime_ = std::make_unique<detail::Runtime>(graph_, options_.workers);
}

Engine::~Engine() = default;

std::size_t Engine::source_index(std::string_view name) const {
  for (std::size_t i = 0; i < sources_.size(); ++i) {
    if (sources_[i]->name == name) return i;
  }
  throw Error("unknown source '" + std::string(name) + "'");
}

void Engine::attach(std::string_view sink_name, std::shared_ptr<SinkWriter> writer) {
  const auto& sinks = graph_.sinks();
  for (std::size_t i = 0; i < sinks.size(); ++i) {
    if (graph_.sink_name(sinks[i]) == sink_name) {
      writers_[i].push_back(std::move(writer));
      return;
    }
  }
  throw Error("unknown sink '" + std::string(sink_name) + "'");
}

void Engine::check_usable() const {
  if (poisoned_) throw Error("engine stopped after an operator error");
  if (finished_) throw ProtocolError("input after end of input");
}

void Engine::stage(std::size_t source, Update update) {
  auto& src = *sources_.at(source);
  update.epoch = src.open_epoch;
  pending_[src.open_epoch].resize(sources_.size());
  pending_[src.open_epoch][source].push_back(std::move(update));
  src.dirty = true;
  ++src.data_records;
}

void Engine::insert(std::size_t source, Row row) {
  check_usable();
  auto& src = *sources_.at(source);
  src.check_row(row);
  Key key;
  if (src.key_columns.empty()) {
    key = hash_key({Value(src.name), Value(static_cast<std::int64_t>(src.next_seq++))});
    src.live_by_row[row].push_back(key);
  } else {
    key = src.key_of(row);
    auto [it, inserted] = src.live.try_emplace(key, row);
    if (!inserted) {
      throw ProtocolError("source '" + src.name + "': duplicate insert of key " + key.hex() + " " +
                          row_to_string(row));
    }
  }
  stage(source, Update{key, std::move(row), +1, 0});
}

void Engine::erase(std::size_t source, Row row) {
  check_usable();
  auto& src = *sources_.at(source);
  src.check_row(row);
  Key key;
  if (src.key_columns.empty()) {
    auto it = src.live_by_row.find(row);
    if (it == src.live_by_row.end()) {
      throw ProtocolError("source '" + src.name + "': delete of absent row " + row_to_string(row));
    }
    key = it->second.back();
    it->second.pop_back();
    if (it->second.empty()) src.live_by_row.erase(it);
  } else {
    key = src.key_of(row);
    auto it = src.live.find(key);
    if (it == src.live.end() || !(it->second == row)) {
      throw ProtocolError("source '" + src.name + "': delete of absent row " + row_to_string(row));
    }
    src.live.erase(it);
  }
  stage(source, Update{key, std::move(row), -1, 0});
}

std::vector<EpochResult> Engine::commit(std::size_t source) {
  check_usable();
  auto& src = *sources_.at(source);
  switch (options_.mode.kind) {
    case RunMode::Kind::Batch: return {};
    case RunMode::Kind::Backfill:
      if (src.open_epoch == 0 && src.data_records < options_.mode.backfill_records) return {};
      break;
    case RunMode::Kind::Streaming: break;
  }
  return advance(source);
}

std::vector<EpochResult> Engine::advance(std::size_t source) {
  auto& src = *sources_.at(source);
  auto closed = frontier_.advance(source, src.open_epoch);
  ++src.open_epoch;
  src.dirty = false;
  std::vector<EpochResult> results;
  for (auto e : closed) results.push_back(run_epoch(e));
  return results;
}

std::vector<EpochResult> Engine::finish() {
  if (poisoned_) throw Error("engine stopped after an operator error");
  if (finished_) return {};
  std::vector<EpochResult> results;
  auto append = [&](std::vector<EpochResult> more) {
    std::move(more.begin(), more.end(), std::back_inserter(results));
  };

  if (options_.mode.kind == RunMode::Kind::Batch) {
    for (std::size_t s = 0; s < sources_.size(); ++s) append(advance(s));
  } else {
    for (std::size_t s = 0; s < sources_.size(); ++s) {
      if (sources_[s]->dirty) append(advance(s));
    }
    std::optional<Epoch> last;
    for (std::size_t s = 0; s < sources_.size(); ++s) {
      if (auto c = frontier_.committed(s)) last = last ? std::max(*last, *c) : *c;
    }
    if (last) {
      for (std::size_t s = 0; s < sources_.size(); ++s) {
        auto c = frontier_.committed(s);
        if (!c || *c < *last) {
          sources_[s]->open_epoch = *last;
          append(advance(s));
        }
      }
    }
  }
  finished_ = true;
  for (const auto& per_sink : writers_) {
    for (const auto& w : per_sink) w->finish();
  }
  return results;
}

EpochResult Engine::run_epoch(Epoch epoch) {
  auto started = std::chrono::steady_clock::now();
  EpochResult result;
  result.epoch = epoch;

  std::vector<std::vector<Update>> inputs(sources_.size());
  if (auto it = pending_.find(epoch); it != pending_.end()) {
    for (std::size_t s = 0; s < it->second.size(); ++s) inputs[s] = std::move(it->second[s]);
    pending_.erase(it);
  }
  for (auto& in : inputs) consolidate_in_place(in);

  try {
    runtime_->run_epoch(epoch, std::move(inputs), result.counters);
    if (options_.check_universes) check_universes(epoch);
  } catch (...) {
    poisoned_ = true;
    throw;
  }

  result.time_ms = options_.clock ? options_.clock->now_ms() : 0;
  const auto& sinks = graph_.sinks();
  for (std::size_t i = 0; i < sinks.size(); ++i) {
    const auto& node = graph_.node(sinks[i]);
    SinkBatch batch{sinks[i], graph_.sink_name(sinks[i]), runtime_->gather(node.inputs[0])};
    result.counters.updates_out += batch.updates.size();
    for (const auto& w : writers_[i]) w->write(node, epoch, result.time_ms, batch.updates);
    result.sinks.push_back(std::move(batch));
  }
  result.counters.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  if (callback_) callback_(result);
  return result;
}

void Engine::check_universes(Epoch epoch) {
  const auto& nodes = graph_.nodes();
  if (key_sets_.empty()) key_sets_.resize(nodes.size());
  for (const auto& n : nodes) {
    if (n.kind == OpKind::Sink) continue;
    auto& keys = key_sets_[n.id];
    for (const auto& u : runtime_->gather(n.id)) {
      if ((keys[u.key] += u.diff) == 0) keys.erase(u.key);
    }
  }

  auto fail = [&](const OperatorNode& n, const Key& key, const std::string& what) {
    throw EngineError("universe-check " + n.label(), key, epoch, what);
  };
  std::map<std::uint32_t, NodeId> representative;
  for (const auto& n : nodes) {
    if (n.kind == OpKind::Sink) continue;
    auto [it, fresh] = representative.try_emplace(n.schema.universe().value, n.id);
    if (fresh) continue;
    const auto& a = key_sets_[it->second];
    const auto& b = key_sets_[n.id];
    for (const auto& [k, d] : b) {
      if (!a.count(k)) fail(n, k, "key missing from equal universe of " + nodes[it->second].label());
    }
    for (const auto& [k, d] : a) {
      if (!b.count(k)) fail(n, k, "key missing compared with equal universe of " + nodes[it->second].label());
    }
  }
  const auto& universes = graph_.universes();
  for (const auto& [sub, super] : universes.subset_facts()) {
    auto s = representative.find(sub.value);
    auto p = representative.find(super.value);
    if (s == representative.end() || p == representative.end()) continue;
    for (const auto& [k, d] : key_sets_[s->second]) {
      if (!key_sets_[p->second].count(k)) {
        fail(nodes[s->second], k, "key outside declared superset " + nodes[p->second].label());
      }
    }
  }
  for (const auto& [a, b] : universes.disjoint_facts()) {
    auto x = representative.find(a.value);
    auto y = representative.find(b.value);
    if (x == representative.end() || y == representative.end()) continue;
    for (const auto& [k, d] : key_sets_[x->second]) {
      if (key_sets_[y->second].count(k)) {
        fail(nodes[x->second], k, "key shared with declared-disjoint " + nodes[y->second].label());
      }
    }
  }
}

std::vector<EpochResult> run(const OperatorGraph& graph, const EngineOptions& options,
                             const std::vector<SourceInput>& inputs) {
  Engine engine(graph, options);
  std::vector<EpochResult> results;
  auto append = [&](std::vector<EpochResult> more) {
    std::move(more.begin(), more.end(), std::back_inserter(results));
  };

  std::vector<std::size_t> index(inputs.size());
  std::vector<std::size_t> cursor(inputs.size(), 0);
  for (std::size_t i = 0; i < inputs.size(); ++i) index[i] = engine.source_index(inputs[i].source);

  bool more = true;
  while (more) {
    more = false;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      const auto& items = inputs[i].items;
      while (cursor[i] < items.size()) {
        const auto& item = items[cursor[i]++];
        if (item.kind == SourceInput::Kind::Commit) {
          append(engine.commit(index[i]));
          break;
        }
        if (item.kind == SourceInput::Kind::Insert) {
          engine.insert(index[i], item.row);
        } else {
          engine.erase(index[i], item.row);
        }
      }
      more = more || cursor[i] < items.size();
    }
  }
  append(engine.finish());
  return results;
}

}  // namespace deltaflow
