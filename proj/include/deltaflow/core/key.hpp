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

#include <cstddef>
#include <span>

#include "deltaflow/core/value.hpp"

namespace deltaflow {

/// Deterministic 128-bit hash of a non-empty list of values (BLAKE2b-128 over
/// a tagged little-endian encoding). Stable across runs, platforms and worker
/// counts.
Key hash_key(std::span<const Value> values);

inline Key hash_key(std::initializer_list<Value> values) {
  return hash_key(std::span<const Value>(values.begin(), values.size()));
}

/// Owner of `key` among `workers` shards: high 64 bits modulo worker count.
inline std::size_t worker_of(const Key& key, std::size_t workers) {
  return workers <= 1 ? 0 : static_cast<std::size_t>(key.hi % workers);
}

}  // namespace deltaflow
