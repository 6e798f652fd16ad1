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
#include <memory>
#include <string>
#include <vector>

#include "deltaflow/core/expr.hpp"
#include "deltaflow/core/schema.hpp"
#include "deltaflow/graph/operator_graph.hpp"

namespace deltaflow {

namespace detail {
struct GraphState;
}

class Table;

/// Builder for one dataflow. Tables created from it append nodes to a shared
/// graph; nothing is executed until the graph is handed to an Engine.
class Pipeline {
 public:
  Pipeline();

  /// Declares an input. Row keys are hash_key(key column values); with no
  /// key columns rows receive sequential per-source ids.
  Table source(std::string name, std::vector<Column> columns,
               std::vector<std::string> key_columns = {});

  /// Validates and freezes the graph. Nodes that feed no sink are dropped
  /// (sources are always kept).
  OperatorGraph build() const;

 private:
  std::shared_ptr<detail::GraphState> state_;
};

/// Immutable handle to a table under construction: schema, universe and the
/// graph node producing it. Every operation returns a new handle.
class Table {
 public:
  const Schema& schema() const { return schema_; }
  UniverseId universe() const { return schema_.universe(); }
  NodeId node() const { return node_; }

  /// Row-wise projection. Keeps keys and universe.
  Table select(std::vector<NamedExpr> outputs) const;

  /// Rows for which `predicate` (bool) holds. Universe becomes a subset.
  Table filter(const Expr& predicate) const;

  /// One output row per non-empty group, keyed by hash_key(group values).
  Table groupby_reduce(std::vector<NamedExpr> keys, std::vector<NamedReducer> reducers) const;

  /// Vectorised dereference: extends each row with `columns` of the `target`
  /// row whose key equals `key` (an expression of type key over this table).
  Table ix(const Expr& key, const Table& target, std::vector<std::string> columns,
           IxPolicy policy = IxPolicy::Strict) const;

  /// Rows whose keys are absent from `other`; rows of `other` are ignored.
  Table difference(const Table& other) const;

  /// Key union of two tables with identical columns; `b` wins on collisions.
  static Table update_rows(const Table& a, const Table& b);

  /// Union of two key-disjoint tables with identical columns. Overlapping
  /// keys are a runtime error.
  static Table concat(const Table& a, const Table& b);

  void sink(SinkSpec spec) const;

 private:
  friend class Pipeline;

  Table(std::shared_ptr<detail::GraphState> state, NodeId node, Schema schema,
        std::vector<std::uint32_t> lineage)
      : state_(std::move(state)), node_(node), schema_(std::move(schema)), lineage_(std::move(lineage)) {}

  void require_same_pipeline(const Table& other, std::string_view op) const;

  std::shared_ptr<detail::GraphState> state_;
  NodeId node_;
  Schema schema_;
  // Per-column provenance id: equal ids on equal universes mean equal values.
  std::vector<std::uint32_t> lineage_;
};

}  // namespace deltaflow
