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
#include <optional>
#include <string>
#include <vector>

#include "deltaflow/bench/latency.hpp"
#include "deltaflow/bench/runner.hpp"

namespace deltaflow::bench {

struct RunSummary {
  double runtime_ms = 0;
  double throughput = 0;
  std::uint64_t epochs = 0;
  std::uint64_t output_updates = 0;
  std::optional<Percentiles> latency;
  std::uint64_t matched = 0;
  std::uint64_t unmatched = 0;
  std::uint64_t burn_in = 0;
};

struct BenchReport {
  BenchConfig config;
  std::vector<RunSummary> runs;
  /// Unset when --verify was not requested.
  std::optional<bool> verified;
  std::vector<std::string> notes;
};

/// Median; mean of the two middle values for even sizes. 0 for empty input.
double median(std::vector<double> values);

std::string config_to_json(const BenchConfig& config);
BenchConfig config_from_json(const std::string& text);

std::string report_to_json(const BenchReport& report);
BenchReport report_from_json(const std::string& text);
std::string report_to_text(const BenchReport& report);

}  // namespace deltaflow::bench
