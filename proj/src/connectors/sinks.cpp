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

#include "deltaflow/connectors/sinks.hpp"

#include "deltaflow/connectors/jsonl.hpp"
#include "deltaflow/core/errors.hpp"

namespace deltaflow::connectors {

void CollectingSink::write(const OperatorNode&, Epoch epoch, std::int64_t time_ms,
                           std::span<const Update> updates) {
  times_[epoch] = time_ms;
  updates_.insert(updates_.end(), updates.begin(), updates.end());
}

std::map<Key, Row> CollectingSink::table() const {
  std::map<std::pair<Key, Row>, Diff> mult;
  for (const auto& u : updates_) {
    auto& m = mult[{u.key, u.row}];
    m += u.diff;
  }
  std::map<Key, Row> out;
  for (const auto& [entry, m] : mult) {
    if (m == 0) continue;
    if (m != 1 || out.contains(entry.first)) {
      throw Error("collected table is not a keyed map at key " + entry.first.hex());
    }
    out.emplace(entry.first, entry.second);
  }
  return out;
}

std::map<std::string, std::shared_ptr<SinkWriter>> attach_standard_sinks(Engine& engine) {
  std::map<std::string, std::shared_ptr<SinkWriter>> out;
  const auto& graph = engine.graph();
  for (NodeId id : graph.sinks()) {
    const auto& spec = std::get<SinkParams>(graph.node(id).params).spec;
    std::string name = graph.sink_name(id);
    std::shared_ptr<SinkWriter> writer;
    switch (spec.kind) {
      case SinkSpec::Kind::Collect: writer = std::make_shared<CollectingSink>(); break;
      case SinkSpec::Kind::Null: writer = std::make_shared<NullSink>(); break;
      case SinkSpec::Kind::Jsonl: writer = std::make_shared<JsonlUpdateWriter>(spec.path); break;
    }
    engine.attach(name, writer);
    out.emplace(std::move(name), std::move(writer));
  }
  return out;
}

}  // namespace deltaflow::connectors
