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

#include "deltaflow/bench/latency.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "deltaflow/core/errors.hpp"

namespace deltaflow::bench {

namespace {

struct WordOutputs {
  // Output indices in log order.
  std::vector<std::size_t> events;
  // count -> ascending positions within `events`.
  std::unordered_map<std::int64_t, std::vector<std::size_t>> by_count;
};

}  // namespace

MatchResult match_latencies(const std::vector<InputEvent>& inputs, const std::vector<OutputEvent>& outputs) {
  std::unordered_map<std::string, WordOutputs> per_word;
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    auto& w = per_word[outputs[i].word];
    w.by_count[outputs[i].count].push_back(w.events.size());
    w.events.push_back(i);
  }

  struct Cursor {
    std::int64_t occurrences = 0;
    std::size_t position = 0;
  };
  std::unordered_map<std::string, Cursor> cursors;

  MatchResult result;
  result.output.resize(inputs.size());
  result.latency_ms.resize(inputs.size());
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    Cursor& cursor = cursors[inputs[i].word];
    const std::int64_t k = ++cursor.occurrences;
    auto it = per_word.find(inputs[i].word);
    if (it == per_word.end()) continue;
    const WordOutputs& w = it->second;

    std::optional<std::size_t> found;
    if (auto exact = w.by_count.find(k); exact != w.by_count.end()) {
      auto pos = std::lower_bound(exact->second.begin(), exact->second.end(), cursor.position);
      if (pos != exact->second.end()) found = *pos;
    }
    if (!found) {
      for (std::size_t pos = cursor.position; pos < w.events.size(); ++pos) {
        if (outputs[w.events[pos]].count > k) {
          found = pos;
          break;
        }
      }
    }
    if (!found) continue;
    cursor.position = *found;
    const std::size_t out = w.events[*found];
    result.output[i] = out;
    result.latency_ms[i] = outputs[out].time_ms - inputs[i].time_ms;
  }
  return result;
}

double percentile(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) throw Error("percentile of an empty sample");
  if (!(p > 0 && p <= 100)) throw Error("percentile must be in (0, 100]");
  auto rank = static_cast<std::size_t>(std::ceil(p / 100.0 * static_cast<double>(sorted.size())));
  return sorted[std::clamp<std::size_t>(rank, 1, sorted.size()) - 1];
}

LatencyReport latency_report(const std::vector<InputEvent>& inputs, const MatchResult& match) {
  LatencyReport report;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (!match.latency_ms[i]) {
      ++report.unmatched;
      continue;
    }
    ++report.matched;
    if (inputs[i].burn_in) {
      ++report.burn_in;
      continue;
    }
    report.latencies_ms.push_back(static_cast<double>(*match.latency_ms[i]));
  }
  if (!report.latencies_ms.empty()) {
    std::vector<double> sorted = report.latencies_ms;
    std::sort(sorted.begin(), sorted.end());
    report.percentiles =
        Percentiles{percentile(sorted, 80), percentile(sorted, 90), percentile(sorted, 95), percentile(sorted, 99)};
  }
  return report;
}

}  // namespace deltaflow::bench
