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

#include "support/oracles.hpp"

#include <unordered_map>

#include "deltaflow/core/key.hpp"

namespace deltaflow::testing {

std::map<std::string, std::int64_t> oracle_word_counts(const std::vector<std::string>& words) {
  std::unordered_map<std::string, std::int64_t> counts;
  for (const auto& w : words) counts[w] += 1;
  return std::map<std::string, std::int64_t>(counts.begin(), counts.end());
}

std::map<std::string, std::int64_t> oracle_pagerank(const EdgeList& edges, int steps) {
  std::unordered_map<std::string, std::size_t> index;
  std::vector<std::string> names;
  auto id = [&](const std::string& name) {
    auto [it, inserted] = index.emplace(name, names.size());
    if (inserted) names.push_back(name);
    return it->second;
  };
  std::vector<std::vector<std::size_t>> out;
  for (const auto& [u, v] : edges) {
    std::size_t a = id(u);
    std::size_t b = id(v);
    if (out.size() < names.size()) out.resize(names.size());
    out[a].push_back(b);
  }
  out.resize(names.size());

  std::vector<std::int64_t> rank(names.size(), 6000);
  for (int t = 0; t < steps; ++t) {
    std::vector<std::int64_t> next(names.size(), 1000);
    for (std::size_t a = 0; a < names.size(); ++a) {
      if (out[a].empty()) continue;
      const std::int64_t share = (rank[a] * 5) / (static_cast<std::int64_t>(out[a].size()) * 6);
      for (std::size_t b : out[a]) next[b] += share;
    }
    rank = std::move(next);
  }
  std::map<std::string, std::int64_t> result;
  for (std::size_t i = 0; i < names.size(); ++i) result[names[i]] = rank[i];
  return result;
}

std::map<Key, std::int64_t> oracle_pagerank_by_key(const EdgeList& edges, int steps) {
  std::map<Key, std::int64_t> result;
  for (const auto& [name, r] : oracle_pagerank(edges, steps)) result[hash_key({Value(name)})] = r;
  return result;
}

std::map<std::string, std::pair<std::string, std::int64_t>> oracle_join(
    const std::map<std::string, std::string>& left, const IntTable& target) {
  std::map<std::string, std::pair<std::string, std::int64_t>> out;
  for (const auto& [id, ref] : left) {
    for (const auto& [name, value] : target) {
      if (name == ref) out[id] = {ref, value};
    }
  }
  return out;
}

IntTable oracle_difference(const IntTable& a, const IntTable& b) {
  IntTable out;
  for (const auto& [k, x] : a) {
    if (!b.contains(k)) out[k] = x;
  }
  return out;
}

IntTable oracle_update_rows(const IntTable& a, const IntTable& b) {
  IntTable out = b;
  for (const auto& [k, x] : a) out.emplace(k, x);
  return out;
}

std::map<std::string, std::pair<std::int64_t, std::int64_t>> oracle_group_sums(
    const std::map<std::string, std::pair<std::string, std::int64_t>>& rows) {
  std::map<std::string, std::pair<std::int64_t, std::int64_t>> out;
  for (const auto& [id, row] : rows) {
    auto& g = out[row.first];
    g.first += 1;
    g.second += row.second;
  }
  return out;
}

}  // namespace deltaflow::testing
