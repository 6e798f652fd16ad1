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

#include "deltaflow/bench/pipelines.hpp"

#include "deltaflow/core/errors.hpp"
#include "deltaflow/graph/table.hpp"

namespace deltaflow::bench {

Schema words_schema() { return Schema({{"word", Type::String}}); }

Schema edges_schema() { return Schema({{"u", Type::String}, {"v", Type::String}}); }

OperatorGraph wordcount_graph(SinkSpec sink) {
  Pipeline p;
  auto words = p.source("words", words_schema().columns());
  words.groupby_reduce({{"word", col("word")}}, {{"count", count()}}).sink(std::move(sink));
  return p.build();
}

OperatorGraph pagerank_graph(int steps, SinkSpec sink) {
  if (steps < 1) throw BuildError("pagerank needs at least one step");
  Pipeline p;
  auto edges = p.source("edges", edges_schema().columns());

  auto in_vertices = edges.groupby_reduce({{"", col("v")}}, {{"degree", int_sum(lit(0))}});
  auto out_vertices = edges.groupby_reduce({{"", col("u")}}, {{"degree", count()}});
  auto degrees = Table::update_rows(in_vertices, out_vertices);
  auto base = out_vertices.difference(in_vertices).select({{"flow", lit(0)}});

  auto ranks = degrees.select({{"rank", lit(6000)}});
  for (int step = 0; step < steps; ++step) {
    auto with_rank = degrees.ix(this_id(), ranks, {"rank"});
    auto outflow = with_rank.select({{"flow", if_else(col("degree") == 0, lit(0),
                                                      floordiv(col("rank") * 5, col("degree") * 6))}});
    auto inflows = edges.ix(pointer_from({col("u")}), outflow, {"flow"})
                       .groupby_reduce({{"", col("v")}}, {{"flow", int_sum(col("flow"))}});
    inflows = Table::concat(base, inflows);
    ranks = inflows.select({{"rank", col("flow") + 1000}});
  }
  ranks.sink(std::move(sink));
  return p.build();
}

}  // namespace deltaflow::bench
