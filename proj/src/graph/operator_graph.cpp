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

#include "deltaflow/graph/operator_graph.hpp"

#include <algorithm>

namespace deltaflow {

std::string_view op_kind_name(OpKind kind) {
  switch (kind) {
    case OpKind::Source: return "source";
    case OpKind::Select: return "select";
    case OpKind::Filter: return "filter";
    case OpKind::GroupByReduce: return "groupby_reduce";
    case OpKind::IxJoin: return "ix_join";
    case OpKind::Difference: return "difference";
    case OpKind::UpdateRows: return "update_rows";
    case OpKind::Concat: return "concat";
    case OpKind::Sink: return "sink";
  }
  return "?";
}

std::string OperatorNode::label() const {
  std::string out = std::string(op_kind_name(kind)) + "#" + std::to_string(id);
  if (const auto* src = std::get_if<SourceParams>(&params)) out += "(" + src->name + ")";
  if (const auto* snk = std::get_if<SinkParams>(&params)) out += "(" + snk->spec.name + ")";
  return out;
}

OperatorGraph::OperatorGraph(std::vector<OperatorNode> nodes, UniverseRelations universes)
    : nodes_(std::move(nodes)), universes_(std::move(universes)) {
  for (const auto& n : nodes_) {
    if (n.kind == OpKind::Source) sources_.push_back(n.id);
    if (n.kind == OpKind::Sink) sinks_.push_back(n.id);
  }
}

std::optional<NodeId> OperatorGraph::source_by_name(std::string_view name) const {
  for (auto id : sources_) {
    if (std::get<SourceParams>(nodes_[id].params).name == name) return id;
  }
  return std::nullopt;
}

std::optional<NodeId> OperatorGraph::sink_by_name(std::string_view name) const {
  for (auto id : sinks_) {
    if (std::get<SinkParams>(nodes_[id].params).spec.name == name) return id;
  }
  return std::nullopt;
}

const std::string& OperatorGraph::source_name(NodeId id) const {
  return std::get<SourceParams>(nodes_.at(id).params).name;
}

const std::string& OperatorGraph::sink_name(NodeId id) const {
  return std::get<SinkParams>(nodes_.at(id).params).spec.name;
}

std::size_t OperatorGraph::count(OpKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [&](const auto& n) { return n.kind == kind; }));
}

std::string OperatorGraph::describe() const {
  std::string out;
  for (const auto& n : nodes_) {
    out += n.label() + " <-";
    for (auto in : n.inputs) out += " " + std::to_string(in);
    out += " : " + n.schema.to_string() + " u" + std::to_string(n.schema.universe().value) + "\n";
  }
  return out;
}

}  // namespace deltaflow
