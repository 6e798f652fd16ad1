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

#include "deltaflow/core/update.hpp"

#include <algorithm>

namespace deltaflow {

bool canonical_less(const Update& a, const Update& b) {
  if (a.epoch != b.epoch) return a.epoch < b.epoch;
  if (a.key != b.key) return a.key < b.key;
  return compare_rows(a.row, b.row) < 0;
}

void consolidate_in_place(std::vector<Update>& updates) {
  if (updates.empty()) return;
  std::sort(updates.begin(), updates.end(), canonical_less);
  std::size_t out = 0;
  for (std::size_t i = 0; i < updates.size();) {
    std::size_t j = i + 1;
    Diff total = updates[i].diff;
    while (j < updates.size() && updates[j].epoch == updates[i].epoch &&
           updates[j].key == updates[i].key && updates[j].row == updates[i].row) {
      total += updates[j].diff;
      ++j;
    }
    if (total != 0) {
      if (out != i) updates[out] = std::move(updates[i]);
      updates[out].diff = total;
      ++out;
    }
    i = j;
  }
  updates.resize(out);
}

std::vector<Update> consolidate(std::vector<Update> updates) {
  consolidate_in_place(updates);
  return updates;
}

}  // namespace deltaflow
