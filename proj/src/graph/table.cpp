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

#include "deltaflow/graph/table.hpp"

#include <algorithm>
#include <set>

#include "deltaflow/core/errors.hpp"

namespace deltaflow {

namespace detail {

struct GraphState {
  std::vector<OperatorNode> nodes;
  UniverseRelations universes;
  std::uint32_t next_lineage = 0;
  std::set<std::string> source_names;
  std::set<std::string> sink_names;

  NodeId add(OpKind kind, std::vector<NodeId> inputs, Schema schema, OperatorParams params) {
    NodeId id = nodes.size();
    nodes.push_back(OperatorNode{id, kind, std::move(inputs), std::move(schema), std::move(params)});
    return id;
  }

  std::vector<std::uint32_t> fresh_lineage(std::size_t n) {
    std::vector<std::uint32_t> out(n);
    for (auto& l : out) l = next_lineage++;
    return out;
  }
};

}  // namespace detail

namespace {

// Expression text with column names replaced by lineage ids, so that two
// groupings of the same values canonicalise identically.
std::string canonical(const Expr& expr, const Schema& schema, const std::vector<std::uint32_t>& lineage) {
  switch (expr.kind()) {
    case Expr::Kind::ColumnRef:
      return "c" + std::to_string(lineage[schema.require(expr.column_name())]);
    case Expr::Kind::Const: return "k" + expr.constant_value().to_string();
    case Expr::Kind::Binary:
      return "(" + canonical(expr.args()[0], schema, lineage) + std::string(op_symbol(expr.op())) +
             canonical(expr.args()[1], schema, lineage) + ")";
    case Expr::Kind::IfElse:
      return "if(" + canonical(expr.args()[0], schema, lineage) + "," +
             canonical(expr.args()[1], schema, lineage) + "," +
             canonical(expr.args()[2], schema, lineage) + ")";
    case Expr::Kind::ThisId: return "id";
    case Expr::Kind::PointerFrom: {
      std::string out = "ptr(";
      for (const auto& a : expr.args()) out += canonical(a, schema, lineage) + ",";
      return out + ")";
    }
  }
  return "?";
}

void require_unique_names(const std::vector<Column>& columns, std::string_view op) {
  std::set<std::string_view> seen;
  for (const auto& c : columns) {
    if (c.name.empty()) throw TypeError(std::string(op), "empty column name");
    if (!seen.insert(c.name).second) {
      throw TypeError(std::string(op), "duplicate output column '" + c.name + "'");
    }
  }
}

}  // namespace

Pipeline::Pipeline() : state_(std::make_shared<detail::GraphState>()) {}

Table Pipeline::source(std::string name, std::vector<Column> columns,
                       std::vector<std::string> key_columns) {
  if (name.empty()) name = "source" + std::to_string(state_->source_names.size());
  if (state_->source_names.contains(name)) {
    throw BuildError("duplicate source name '" + name + "'");
  }
  require_unique_names(columns, "source");
  Schema unbound(columns);

  SourceParams params{name, {}};
  std::set<std::string> seen;
  for (const auto& k : key_columns) {
    if (!seen.insert(k).second) throw TypeError("source", "duplicate key column '" + k + "'");
    params.key_columns.push_back(unbound.require(k));
  }
  state_->source_names.insert(name);
  Schema schema = unbound.with_universe(state_->universes.fresh());
  auto lineage = state_->fresh_lineage(schema.size());
  NodeId id = state_->add(OpKind::Source, {}, schema, std::move(params));
  return Table(state_, id, std::move(schema), std::move(lineage));
}

OperatorGraph Pipeline::build() const {
  const auto& nodes = state_->nodes;
  bool has_source = std::any_of(nodes.begin(), nodes.end(),
                                [](const auto& n) { return n.kind == OpKind::Source; });
  bool has_sink = std::any_of(nodes.begin(), nodes.end(),
                              [](const auto& n) { return n.kind == OpKind::Sink; });
  if (!has_source) throw BuildError("pipeline has no source");
  if (!has_sink) throw BuildError("pipeline has no sink");

  std::vector<bool> live(nodes.size(), false);
  for (std::size_t i = nodes.size(); i-- > 0;) {
    if (nodes[i].kind == OpKind::Sink || nodes[i].kind == OpKind::Source) live[i] = true;
    if (!live[i]) continue;
    for (auto in : nodes[i].inputs) live[in] = true;
  }

  std::vector<NodeId> remap(nodes.size(), 0);
  std::vector<OperatorNode> kept;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!live[i]) continue;
    OperatorNode n = nodes[i];
    n.id = kept.size();
    for (auto& in : n.inputs) in = remap[in];
    remap[i] = n.id;
    kept.push_back(std::move(n));
  }
  return OperatorGraph(std::move(kept), state_->universes);
}

void Table::require_same_pipeline(const Table& other, std::string_view op) const {
  if (state_ != other.state_) {
    throw BuildError(std::string(op) + ": tables belong to different pipelines");
  }
}

Table Table::select(std::vector<NamedExpr> outputs) const {
  std::vector<Column> columns;
  std::vector<std::uint32_t> lineage;
  for (const auto& out : outputs) {
    try {
      columns.push_back({out.name, typecheck(out.expr, schema_)});
    } catch (const TypeError& e) {
      throw TypeError("select." + out.name + (e.path().empty() ? "" : e.path().substr(1)),
                      e.message());
    }
    if (out.expr.kind() == Expr::Kind::ColumnRef) {
      lineage.push_back(lineage_[schema_.require(out.expr.column_name())]);
    } else {
      lineage.push_back(state_->next_lineage++);
    }
  }
  require_unique_names(columns, "select");
  Schema schema(std::move(columns), universe());
  NodeId id = state_->add(OpKind::Select, {node_}, schema, SelectParams{std::move(outputs)});
  return Table(state_, id, std::move(schema), std::move(lineage));
}

Table Table::filter(const Expr& predicate) const {
  Type t = typecheck(predicate, schema_);
  if (t != Type::Bool) {
    throw TypeError("filter", "predicate must be bool, found " + std::string(type_name(t)));
  }
  UniverseId u = state_->universes.fresh();
  state_->universes.declare_subset(u, universe());
  Schema schema = schema_.with_universe(u);
  NodeId id = state_->add(OpKind::Filter, {node_}, schema, FilterParams{predicate});
  return Table(state_, id, std::move(schema), lineage_);
}

Table Table::groupby_reduce(std::vector<NamedExpr> keys, std::vector<NamedReducer> reducers) const {
  if (keys.empty()) throw TypeError("groupby_reduce", "at least one grouping expression required");
  std::vector<Column> columns;
  std::string description = "groupby(u" + std::to_string(universe().value) + ";";
  for (const auto& k : keys) {
    Type t = typecheck(k.expr, schema_);
    if (!k.name.empty()) columns.push_back({k.name, t});
    description += canonical(k.expr, schema_, lineage_) + ";";
  }
  for (const auto& r : reducers) {
    if (r.reducer.kind == Reducer::Kind::IntSum) {
      if (!r.reducer.expr) throw TypeError("groupby_reduce." + r.name, "int_sum needs an expression");
      Type t = typecheck(*r.reducer.expr, schema_);
      if (t != Type::Int) {
        throw TypeError("groupby_reduce." + r.name,
                        "int_sum expects int, found " + std::string(type_name(t)));
      }
    }
    columns.push_back({r.name, Type::Int});
  }
  require_unique_names(columns, "groupby_reduce");
  UniverseId u = state_->universes.intern(description + ")");
  Schema schema(std::move(columns), u);
  auto lineage = state_->fresh_lineage(schema.size());
  NodeId id = state_->add(OpKind::GroupByReduce, {node_}, schema,
                          GroupByParams{std::move(keys), std::move(reducers)});
  return Table(state_, id, std::move(schema), std::move(lineage));
}

Table Table::ix(const Expr& key, const Table& target, std::vector<std::string> columns,
                IxPolicy policy) const {
  require_same_pipeline(target, "ix");
  Type t = typecheck(key, schema_);
  if (t != Type::Key) {
    throw TypeError("ix", "key expression must have type key, found " + std::string(type_name(t)));
  }
  std::vector<Column> out = schema_.columns();
  std::vector<std::size_t> positions;
  for (const auto& name : columns) {
    std::size_t pos = target.schema_.require(name);
    positions.push_back(pos);
    out.push_back(target.schema_[pos]);
  }
  require_unique_names(out, "ix");
  UniverseId u = universe();
  if (policy == IxPolicy::Skip) {
    u = state_->universes.fresh();
    state_->universes.declare_subset(u, universe());
  }
  Schema schema(std::move(out), u);
  auto lineage = lineage_;
  auto extra = state_->fresh_lineage(columns.size());
  lineage.insert(lineage.end(), extra.begin(), extra.end());
  NodeId id = state_->add(OpKind::IxJoin, {node_, target.node_}, schema,
                          IxParams{key, std::move(columns), std::move(positions), policy});
  return Table(state_, id, std::move(schema), std::move(lineage));
}

Table Table::difference(const Table& other) const {
  require_same_pipeline(other, "difference");
  UniverseId u = state_->universes.fresh();
  state_->universes.declare_subset(u, universe());
  state_->universes.declare_disjoint(u, other.universe());
  Schema schema = schema_.with_universe(u);
  NodeId id = state_->add(OpKind::Difference, {node_, other.node_}, schema, std::monostate{});
  return Table(state_, id, std::move(schema), lineage_);
}

Table Table::update_rows(const Table& a, const Table& b) {
  a.require_same_pipeline(b, "update_rows");
  if (!a.schema_.same_columns(b.schema_)) {
    throw TypeError("update_rows", "schema mismatch: " + a.schema_.to_string() + " vs " +
                                       b.schema_.to_string());
  }
  auto& universes = a.state_->universes;
  UniverseId u = universes.fresh();
  universes.declare_subset(a.universe(), u);
  universes.declare_subset(b.universe(), u);
  Schema schema = a.schema_.with_universe(u);
  auto lineage = a.state_->fresh_lineage(schema.size());
  NodeId id = a.state_->add(OpKind::UpdateRows, {a.node_, b.node_}, schema, std::monostate{});
  return Table(a.state_, id, std::move(schema), std::move(lineage));
}

Table Table::concat(const Table& a, const Table& b) {
  a.require_same_pipeline(b, "concat");
  if (!a.schema_.same_columns(b.schema_)) {
    throw TypeError("concat", "schema mismatch: " + a.schema_.to_string() + " vs " +
                                  b.schema_.to_string());
  }
  auto& universes = a.state_->universes;
  // Disjointness that cannot be proven here is checked per key at runtime.
  UniverseId u = universes.fresh();
  universes.declare_subset(a.universe(), u);
  universes.declare_subset(b.universe(), u);
  Schema schema = a.schema_.with_universe(u);
  auto lineage = a.state_->fresh_lineage(schema.size());
  NodeId id = a.state_->add(OpKind::Concat, {a.node_, b.node_}, schema, std::monostate{});
  return Table(a.state_, id, std::move(schema), std::move(lineage));
}

void Table::sink(SinkSpec spec) const {
  if (spec.kind == SinkSpec::Kind::Jsonl && spec.path.empty()) {
    throw BuildError("jsonl sink needs a path");
  }
  if (spec.name.empty()) spec.name = "sink" + std::to_string(state_->sink_names.size());
  if (!state_->sink_names.insert(spec.name).second) {
    throw BuildError("duplicate sink name '" + spec.name + "'");
  }
  state_->add(OpKind::Sink, {node_}, schema_, SinkParams{std::move(spec)});
}

}  // namespace deltaflow
