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
#include <span>
#include <vector>

#include "deltaflow/core/key.hpp"
#include "deltaflow/core/update.hpp"
#include "deltaflow/graph/operator_graph.hpp"

namespace deltaflow {

/// Sharding of keyed state across symmetric workers.
struct WorkerPlan {
  std::size_t workers = 1;

  std::size_t owner(const Key& key) const { return worker_of(key, workers); }

  /// Stateful operators receive their inputs re-partitioned on the key their
  /// state is indexed by; row-wise operators run where the data is.
  static bool needs_exchange(OpKind kind);
};

/// Partitions updates by owner, keeping relative order within each worker.
std::vector<std::vector<Update>> exchange(std::span<const Update> updates, const WorkerPlan& plan);

}  // namespace deltaflow
