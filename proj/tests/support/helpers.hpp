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

#include <map>
#include <string>
#include <vector>

#include "deltaflow/core/update.hpp"
#include "deltaflow/engine/engine.hpp"

namespace deltaflow::testing {

/// Accumulates a sink's updates into key -> row, failing on any state that
/// is not a keyed map.
std::map<Key, Row> accumulate(const std::vector<Update>& updates);

/// All updates a sink received over `results`.
std::vector<Update> sink_updates(const std::vector<EpochResult>& results, const std::string& sink);

/// Every epoch's updates for `sink`, in order.
std::vector<std::vector<Update>> sink_epochs(const std::vector<EpochResult>& results, const std::string& sink);

/// The consolidated update list that turns `before` into `after` at `epoch`.
std::vector<Update> diff_states(const std::map<Key, Row>& before, const std::map<Key, Row>& after, Epoch epoch);

/// Updates for `sink` in the result for `epoch`; empty when absent.
std::vector<Update> epoch_updates(const std::vector<EpochResult>& results, const std::string& sink, Epoch epoch);

/// True when no (key, row) appears twice and no diff is zero.
bool is_consolidated(const std::vector<Update>& updates);

}  // namespace deltaflow::testing
