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

#include <string>

#include "deltaflow/core/schema.hpp"
#include "deltaflow/graph/operator_graph.hpp"

namespace deltaflow::bench {

Schema words_schema();
Schema edges_schema();

/// words(word) -> groupby word -> (word, count).
OperatorGraph wordcount_graph(SinkSpec sink = SinkSpec::collect("counts"));

/// The unrolled integer PageRank over edges(u, v); output rows (rank) keyed
/// by vertex pointer.
OperatorGraph pagerank_graph(int steps = 5, SinkSpec sink = SinkSpec::collect("ranks"));

}  // namespace deltaflow::bench
