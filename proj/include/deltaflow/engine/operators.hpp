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
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "deltaflow/core/expr.hpp"
#include "deltaflow/core/update.hpp"
#include "deltaflow/engine/arrangement.hpp"
#include "deltaflow/graph/operator_graph.hpp"

namespace deltaflow {

// Per-epoch delta operators. Each takes the consolidated input deltas of one
// epoch and returns consolidated output deltas such that the accumulated
// output equals the operator's batch semantics on the accumulated inputs.
// Runtime failures are reported as EngineError naming `label`.

/// select / filter: each input update maps to at most one output update with
/// the same key and diff.
class StatelessOp {
 public:
  static StatelessOp select(const std::vector<NamedExpr>& outputs, const Schema& input,
                            std::string label = "select");
  static StatelessOp filter(const Expr& predicate, const Schema& input,
                            std::string label = "filter");

  std::vector<Update> apply(std::span<const Update> deltas, Epoch epoch) const;

 private:
  StatelessOp(std::string label, std::vector<CompiledExpr> outputs, std::optional<CompiledExpr> predicate)
      : label_(std::move(label)), outputs_(std::move(outputs)), predicate_(std::move(predicate)) {}

  std::string label_;
  std::vector<CompiledExpr> outputs_;
  std::optional<CompiledExpr> predicate_;
};

/// Incremental groupby with abelian reducers.
///
/// Input goes through prepare() first, which evaluates the grouping and
/// reducer expressions and re-keys the update by its group; the prepared
/// updates are what gets exchanged between workers.
class GroupByState {
 public:
  GroupByState(const GroupByParams& params, const Schema& input, std::string label = "groupby_reduce");

  Update prepare(const Update& in) const;

  /// Emits -old/+new aggregate rows for every touched group whose output
  /// changed; new groups emit only +new, emptied groups only -old.
  std::vector<Update> apply(std::vector<Update> prepared, Epoch epoch);

  std::size_t size() const { return groups_.size(); }

 private:
  struct Group {
    Row values;
    Diff count = 0;
    std::vector<std::int64_t> sums;
  };

  Row output_row(const Group& g) const;

  std::string label_;
  std::vector<CompiledExpr> keys_;
  std::vector<bool> emitted_;
  std::vector<Reducer::Kind> reducers_;
  std::vector<std::optional<CompiledExpr>> reducer_exprs_;
  std::size_t emitted_count_ = 0;
  std::unordered_map<Key, Group, KeyHasher> groups_;
};

/// Vectorised dereference (delta join against a keyed target).
///
/// Left updates are re-keyed by prepare_left() to the target key they point
/// at, carrying their own id in front of the row. Output:
///   delta = left_old x delta_target + delta_left x target_new
/// which equals the full-join difference between epochs without transients.
class IxState {
 public:
  IxState(const IxParams& params, const Schema& left, std::string label = "ix_join");

  Update prepare_left(const Update& in) const;

  std::vector<Update> apply(std::vector<Update> left, std::vector<Update> target, Epoch epoch);

  std::size_t size() const { return left_.size() + target_.size(); }
  const Arrangement& left_arrangement() const { return left_; }
  const Arrangement& target_arrangement() const { return target_; }
  void seal(Epoch epoch) {
    left_.seal(epoch);
    target_.seal(epoch);
  }

 private:
  Row joined(const Row& left_row, const Row& target_row) const;

  std::string label_;
  CompiledExpr key_;
  std::vector<std::size_t> target_columns_;
  IxPolicy policy_;
  Arrangement left_;
  Arrangement target_;
};

/// difference / update_rows / concat over two keyed inputs.
class SetOpState {
 public:
  SetOpState(OpKind kind, std::string label = {});

  std::vector<Update> apply(std::vector<Update> a, std::vector<Update> b, Epoch epoch);

  std::size_t size() const { return a_.size() + b_.size(); }
  void seal(Epoch epoch) {
    a_.seal(epoch);
    b_.seal(epoch);
  }

 private:
  const Row* output_for(const Key& key, Epoch epoch) const;

  OpKind kind_;
  std::string label_;
  Arrangement a_;
  Arrangement b_;
};

}  // namespace deltaflow
