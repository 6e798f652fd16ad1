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
#include <map>
#include <string>
#include <vector>

#include "deltaflow/bench/datasets.hpp"
#include "deltaflow/core/value.hpp"

namespace deltaflow::bench {

std::map<std::string, std::int64_t> count_words(const std::vector<std::string>& words);

/// Direct evaluation of the integer PageRank recurrence over adjacency
/// counts, keyed by vertex label.
std::map<std::string, std::int64_t> pagerank_reference(const std::vector<Edge>& edges, int steps = 5);

/// Same, keyed by the vertex pointer hash_key({label}).
std::map<Key, std::int64_t> pagerank_reference_by_key(const std::vector<Edge>& edges, int steps = 5);

}  // namespace deltaflow::bench
