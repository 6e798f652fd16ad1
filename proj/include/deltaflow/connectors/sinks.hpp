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
#include <memory>
#include <string>
#include <vector>

#include "deltaflow/core/update.hpp"
#include "deltaflow/engine/engine.hpp"

namespace deltaflow::connectors {

/// Discards updates, keeping counts.
class NullSink final : public SinkWriter {
 public:
  void write(const OperatorNode&, Epoch, std::int64_t, std::span<const Update> updates) override {
    ++epochs_;
    updates_ += updates.size();
  }
  std::uint64_t epochs() const { return epochs_; }
  std::uint64_t updates() const { return updates_; }

 private:
  std::uint64_t epochs_ = 0;
  std::uint64_t updates_ = 0;
};

/// Keeps every update in arrival order plus the running table.
class CollectingSink final : public SinkWriter {
 public:
  void write(const OperatorNode& sink, Epoch epoch, std::int64_t time_ms,
             std::span<const Update> updates) override;

  const std::vector<Update>& updates() const { return updates_; }
  /// epoch -> time_ms for every epoch seen.
  const std::map<Epoch, std::int64_t>& epoch_times() const { return times_; }
  /// Accumulated table: key -> row (multiplicity 1 rows only).
  std::map<Key, Row> table() const;

 private:
  std::vector<Update> updates_;
  std::map<Epoch, std::int64_t> times_;
};

/// Attaches one writer per sink according to its SinkSpec and returns them
/// by sink name.
std::map<std::string, std::shared_ptr<SinkWriter>> attach_standard_sinks(Engine& engine);

}  // namespace deltaflow::connectors
