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

#include <optional>
#include <string>
#include <vector>

#include "deltaflow/bench/latency.hpp"

namespace deltaflow::testing {

/// A pair of input/output logs with latencies worked out by hand.
struct LatencyCase {
  std::string name;
  std::vector<bench::InputEvent> inputs;
  std::vector<bench::OutputEvent> outputs;
  /// Per input event; nullopt when the event has no match.
  std::vector<std::optional<std::int64_t>> latencies;
  std::uint64_t burn_in = 0;
  /// Expected percentiles over non-burn-in latencies; nullopt when none remain.
  std::optional<bench::Percentiles> percentiles;
};

std::vector<LatencyCase> latency_cases();

}  // namespace deltaflow::testing
