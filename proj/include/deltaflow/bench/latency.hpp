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

namespace deltaflow::bench {

struct InputEvent {
  std::string word;
  std::int64_t time_ms = 0;
  bool burn_in = false;
};

/// A sink insertion (word, count) at time_ms. Retractions are not events.
struct OutputEvent {
  std::string word;
  std::int64_t count = 0;
  std::int64_t time_ms = 0;
};

struct MatchResult {
  /// Per input event: index into the output events, or nullopt.
  std::vector<std::optional<std::size_t>> output;
  std::vector<std::optional<std::int64_t>> latency_ms;
};

/// The k-th occurrence of a word matches the earliest output for that word,
/// at or after the previous occurrence's match, whose count is exactly k;
/// failing that the earliest such output with a larger count.
MatchResult match_latencies(const std::vector<InputEvent>& inputs, const std::vector<OutputEvent>& outputs);

struct Percentiles {
  double p80 = 0;
  double p90 = 0;
  double p95 = 0;
  double p99 = 0;
};

/// Nearest-rank percentile of an ascending sample; p in (0, 100].
double percentile(const std::vector<double>& sorted, double p);

struct LatencyReport {
  /// Matched latencies of post-burn-in inputs, in input order.
  std::vector<double> latencies_ms;
  std::uint64_t matched = 0;
  std::uint64_t unmatched = 0;
  std::uint64_t burn_in = 0;
  /// Empty when there are no measurable events.
  std::optional<Percentiles> percentiles;
};

LatencyReport latency_report(const std::vector<InputEvent>& inputs, const MatchResult& match);

}  // namespace deltaflow::bench
