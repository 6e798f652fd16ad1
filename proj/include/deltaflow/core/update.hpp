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
#include <vector>

#include "deltaflow/core/value.hpp"

namespace deltaflow {

using Epoch = std::uint64_t;
using Diff = std::int64_t;

/// Atomic change record: `diff` copies of `row` at `key`, effective at `epoch`.
struct Update {
  Key key;
  Row row;
  Diff diff = 0;
  Epoch epoch = 0;

  friend bool operator==(const Update&, const Update&) = default;
};

/// Canonical order: (epoch, key, row), diff last.
bool canonical_less(const Update& a, const Update& b);

/// Sums diffs per (key, row, epoch), drops zero entries and returns the
/// result in canonical order.
std::vector<Update> consolidate(std::vector<Update> updates);

/// In-place variant used on hot paths.
void consolidate_in_place(std::vector<Update>& updates);

}  // namespace deltaflow
