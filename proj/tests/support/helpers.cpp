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

#include "support/helpers.hpp"

#include <set>
#include <stdexcept>

namespace deltaflow::testing {

std::map<Key, Row> accumulate(const std::vector<Update>& updates) {
  std::map<std::pair<Key, Row>, Diff> mult;
  for (const auto& u : updates) mult[{u.key, u.row}] += u.diff;
  std::map<Key, Row> out;
  for (const auto& [entry, m] : mult) {
    if (m == 0) continue;
    if (m != 1 || !out.emplace(entry.first, entry.second).second) {
      throw std::runtime_error("accumulated output is not a keyed map at " + entry.first.hex());
    }
  }
  return out;
}

std::vector<Update> sink_updates(const std::vector<EpochResult>& results, const std::string& sink) {
  std::vector<Update> out;
  for (const auto& r : results) {
    if (const auto* batch = r.sink(sink)) out.insert(out.end(), batch->updates.begin(), batch->updates.end());
  }
  return out;
}

std::vector<std::vector<Update>> sink_epochs(const std::vector<EpochResult>& results, const std::string& sink) {
  std::vector<std::vector<Update>> out;
  for (const auto& r : results) {
    const auto* batch = r.sink(sink);
    out.push_back(batch ? batch->updates : std::vector<Update>{});
  }
  return out;
}

std::vector<Update> diff_states(const std::map<Key, Row>& before, const std::map<Key, Row>& after, Epoch epoch) {
  std::vector<Update> out;
  for (const auto& [k, row] : before) out.push_back(Update{k, row, -1, epoch});
  for (const auto& [k, row] : after) out.push_back(Update{k, row, +1, epoch});
  return consolidate(std::move(out));
}

std::vector<Update> epoch_updates(const std::vector<EpochResult>& results, const std::string& sink, Epoch epoch) {
  for (const auto& r : results) {
    if (r.epoch != epoch) continue;
    if (const auto* batch = r.sink(sink)) return batch->updates;
  }
  return {};
}

bool is_consolidated(const std::vector<Update>& updates) {
  std::set<std::pair<Key, Row>> seen;
  for (const auto& u : updates) {
    if (u.diff == 0 || !seen.emplace(u.key, u.row).second) return false;
  }
  return true;
}

}  // namespace deltaflow::testing
