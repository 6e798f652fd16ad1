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
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "deltaflow/core/expr.hpp"
#include "deltaflow/core/schema.hpp"
#include "deltaflow/graph/universe.hpp"

namespace deltaflow {

using NodeId = std::size_t;

enum class OpKind { Source, Select, Filter, GroupByReduce, IxJoin, Difference, UpdateRows, Concat, Sink };

std::string_view op_kind_name(OpKind kind);

struct NamedExpr {
  std::string name;
  Expr expr;
};

/// Abelian aggregation: supports retraction by negating the contribution.
struct Reducer {
  enum class Kind { Count, IntSum };
  Kind kind = Kind::Count;
  std::optional<Expr> expr;
};

inline Reducer count() { return {Reducer::Kind::Count, std::nullopt}; }
inline Reducer int_sum(Expr expr) { return {Reducer::Kind::IntSum, std::move(expr)}; }

struct NamedReducer {
  std::string name;
  Reducer reducer;
};

/// What `ix` does with a row whose key expression points at no target row.
enum class IxPolicy { Strict, Skip };

/// Where a sink's per-epoch updates go.
struct SinkSpec {
  enum class Kind { Collect, Null, Jsonl };
  Kind kind = Kind::Collect;
  std::string path;
  std::string name;

  static SinkSpec collect(std::string name = {}) { return {Kind::Collect, {}, std::move(name)}; }
  static SinkSpec null(std::string name = {}) { return {Kind::Null, {}, std::move(name)}; }
  static SinkSpec jsonl(std::string path, std::string name = {}) {
    return {Kind::Jsonl, std::move(path), std::move(name)};
  }
};

struct SourceParams {
  std::string name;
  /// Positions of the key columns; empty means rows get sequential ids.
  std::vector<std::size_t> key_columns;
};

struct SelectParams {
  std::vector<NamedExpr> outputs;
};

struct FilterParams {
  Expr predicate;
};

struct GroupByParams {
  /// Grouping expressions. Entries with an empty name define the group but
  /// are not emitted as output columns.
  std::vector<NamedExpr> keys;
  std::vector<NamedReducer> reducers;
};

struct IxParams {
  Expr key;
  std::vector<std::string> columns;
  std::vector<std::size_t> target_columns;
  IxPolicy policy = IxPolicy::Strict;
};

struct SinkParams {
  SinkSpec spec;
};

using OperatorParams = std::variant<std::monostate, SourceParams, SelectParams, FilterParams,
                                    GroupByParams, IxParams, SinkParams>;

struct OperatorNode {
  NodeId id = 0;
  OpKind kind = OpKind::Source;
  std::vector<NodeId> inputs;
  /// Output schema (for sinks: the schema of the sunk table).
  Schema schema;
  OperatorParams params;

  /// "kind#id", used in error messages.
  std::string label() const;
};

/// Validated, immutable operator DAG. Nodes are stored in topological order
/// and node ids equal positions.
class OperatorGraph {
 public:
  OperatorGraph(std::vector<OperatorNode> nodes, UniverseRelations universes);

  const std::vector<OperatorNode>& nodes() const { return nodes_; }
  const OperatorNode& node(NodeId id) const { return nodes_.at(id); }
  const std::vector<NodeId>& sources() const { return sources_; }
  const std::vector<NodeId>& sinks() const { return sinks_; }
  const UniverseRelations& universes() const { return universes_; }

  std::optional<NodeId> source_by_name(std::string_view name) const;
  std::optional<NodeId> sink_by_name(std::string_view name) const;
  const std::string& source_name(NodeId id) const;
  const std::string& sink_name(NodeId id) const;

  std::size_t count(OpKind kind) const;

  /// Multi-line listing, one node per line; equal for isomorphic builds.
  std::string describe() const;

 private:
  std::vector<OperatorNode> nodes_;
  UniverseRelations universes_;
  std::vector<NodeId> sources_;
  std::vector<NodeId> sinks_;
};

}  // namespace deltaflow
