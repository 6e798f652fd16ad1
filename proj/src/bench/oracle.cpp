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

#include "deltaflow/bench/oracle.hpp"

#include <unordered_map>

#include "deltaflow/core/key.hpp"

namespace deltaflow::bench {

std::map<std::string, std::int64_t> count_words(const std::vector<std::string>& words) {
  std::unordered_map<std::string, std::int64_t> counts;
  for (const auto& w : words) ++counts[w];
  return {counts.begin(), counts.end()};
}

std::map<std::string, std::int64_t> pagerank_reference(const std::vector<Edge>& edges, int steps) {
  std::map<std::string, std::int64_t> out_degree;
  std::map<std::string, bool> has_in;
  for (const auto& e : edges) {
    ++out_degree[e.u];
    has_in[e.v] = true;
    out_degree.try_emplace(e.v, 0);
  }
  std::map<std::string, std::int64_t> rank;
  for (const auto& [v, _] : out_degree) rank[v] = 6000;
  for (int s = 0; s < steps; ++s) {
    std::map<std::string, std::int64_t> inflow;
    for (const auto& e : edges) inflow[e.v] += rank[e.u] * 5 / (out_degree[e.u] * 6);
    for (auto& [v, r] : rank) r = (has_in.count(v) ? inflow[v] : 0) + 1000;
  }
  return rank;
}

std::map<Key, std::int64_t> pagerank_reference_by_key(const std::vector<Edge>& edges, int steps) {
  std::map<Key, std::int64_t> out;
  for (const auto& [v, r] : pagerank_reference(edges, steps)) out.emplace(hash_key({Value(v)}), r);
  return out;
}

}  // namespace deltaflow::bench
