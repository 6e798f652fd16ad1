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

#include "deltaflow/engine/operators.hpp"

#include <algorithm>

#include "deltaflow/core/errors.hpp"
#include "deltaflow/core/key.hpp"

namespace deltaflow {

namespace {

std::optional<Row> copy_of(const Row* row) {
  if (!row) return std::nullopt;
  return *row;
}

void emit_change(std::vector<Update>& out, const Key& key, const std::optional<Row>& old_row,
                 const std::optional<Row>& new_row, Epoch epoch) {
  if (old_row == new_row) return;
  if (old_row) out.push_back(Update{key, *old_row, -1, epoch});
  if (new_row) out.push_back(Update{key, *new_row, +1, epoch});
}

// Calls fn(key, left_begin, left_end, right_begin, right_end) for every key
// present in either sorted input.
template <typename Fn>
void merge_by_key(const std::vector<Update>& left, const std::vector<Update>& right, Fn&& fn) {
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < left.size() || j < right.size()) {
    Key key;
    if (j >= right.size() || (i < left.size() && left[i].key < right[j].key)) {
      key = left[i].key;
    } else {
      key = right[j].key;
    }
    std::size_t i_end = i;
    while (i_end < left.size() && left[i_end].key == key) ++i_end;
    std::size_t j_end = j;
    while (j_end < right.size() && right[j_end].key == key) ++j_end;
    fn(key, i, i_end, j, j_end);
    i = i_end;
    j = j_end;
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// select / filter

StatelessOp StatelessOp::select(const std::vector<NamedExpr>& outputs, const Schema& input,
                                std::string label) {
  std::vector<CompiledExpr> compiled;
  compiled.reserve(outputs.size());
  for (const auto& o : outputs) compiled.emplace_back(o.expr, input);
  return StatelessOp(std::move(label), std::move(compiled), std::nullopt);
}

StatelessOp StatelessOp::filter(const Expr& predicate, const Schema& input, std::string label) {
  return StatelessOp(std::move(label), {}, CompiledExpr(predicate, input));
}

std::vector<Update> StatelessOp::apply(std::span<const Update> deltas, Epoch epoch) const {
  std::vector<Update> out;
  out.reserve(deltas.size());
  for (const auto& u : deltas) {
    try {
      if (predicate_) {
        if (predicate_->eval(u.row, u.key).as_bool()) out.push_back(Update{u.key, u.row, u.diff, epoch});
        continue;
      }
      Row row;
      row.reserve(outputs_.size());
      for (const auto& e : outputs_) row.push_back(e.eval(u.row, u.key));
      out.push_back(Update{u.key, std::move(row), u.diff, epoch});
    } catch (const EvalError& e) {
      throw EngineError(label_, e.key(), epoch, e.reason() + " at " + e.path());
    }
  }
  consolidate_in_place(out);
  return out;
}

// ---------------------------------------------------------------------------
// groupby_reduce

GroupByState::GroupByState(const GroupByParams& params, const Schema& input, std::string label)
    : label_(std::move(label)) {
  for (const auto& k : params.keys) {
    keys_.emplace_back(k.expr, input);
    emitted_.push_back(!k.name.empty());
    if (!k.name.empty()) ++emitted_count_;
  }
  for (const auto& r : params.reducers) {
    reducers_.push_back(r.reducer.kind);
    if (r.reducer.kind == Reducer::Kind::IntSum) {
      reducer_exprs_.emplace_back(CompiledExpr(*r.reducer.expr, input));
    } else {
      reducer_exprs_.emplace_back(std::nullopt);
    }
  }
}

Update GroupByState::prepare(const Update& in) const {
  try {
    Row all;
    all.reserve(keys_.size());
    for (const auto& k : keys_) all.push_back(k.eval(in.row, in.key));
    Key group = hash_key(all);

    Row row;
    row.reserve(emitted_count_ + reducers_.size());
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (emitted_[i]) row.push_back(std::move(all[i]));
    }
    for (const auto& e : reducer_exprs_) {
      if (e) row.push_back(e->eval(in.row, in.key));
    }
    return Update{group, std::move(row), in.diff, in.epoch};
  } catch (const EvalError& e) {
    throw EngineError(label_, e.key(), in.epoch, e.reason() + " at " + e.path());
  }
}

Row GroupByState::output_row(const Group& g) const {
  Row row = g.values;
  std::size_t sum = 0;
  for (auto kind : reducers_) {
    if (kind == Reducer::Kind::Count) {
      row.push_back(static_cast<std::int64_t>(g.count));
    } else {
      row.push_back(g.sums[sum++]);
    }
  }
  return row;
}

std::vector<Update> GroupByState::apply(std::vector<Update> prepared, Epoch epoch) {
  std::size_t sum_count = 0;
  for (const auto& e : reducer_exprs_) sum_count += e ? 1 : 0;

  struct Touched {
    Key key;
    std::optional<Row> old_row;
  };
  std::vector<Touched> touched;
  std::unordered_map<Key, std::size_t, KeyHasher> seen;

  for (const auto& u : prepared) {
    auto [it, created] = groups_.try_emplace(u.key);
    Group& g = it->second;
    if (created) {
      g.values.assign(u.row.begin(), u.row.begin() + static_cast<std::ptrdiff_t>(emitted_count_));
      g.sums.assign(sum_count, 0);
    } else if (!std::equal(g.values.begin(), g.values.end(), u.row.begin())) {
      throw EngineError(label_, u.key, epoch, "group key collision");
    }
    if (seen.try_emplace(u.key, touched.size()).second) {
      touched.push_back(Touched{u.key, created ? std::nullopt : std::optional<Row>(output_row(g))});
    }
    if (__builtin_add_overflow(g.count, u.diff, &g.count)) {
      throw EngineError(label_, u.key, epoch, "integer overflow in count");
    }
    for (std::size_t j = 0; j < sum_count; ++j) {
      std::int64_t contribution = 0;
      std::int64_t value = u.row[emitted_count_ + j].as_int();
      if (__builtin_mul_overflow(value, u.diff, &contribution) ||
          __builtin_add_overflow(g.sums[j], contribution, &g.sums[j])) {
        throw EngineError(label_, u.key, epoch, "integer overflow in int_sum");
      }
    }
  }

  std::vector<Update> out;
  for (const auto& t : touched) {
    auto it = groups_.find(t.key);
    std::optional<Row> new_row;
    if (it->second.count < 0) {
      throw EngineError(label_, t.key, epoch, "negative group multiplicity");
    }
    if (it->second.count > 0) {
      new_row = output_row(it->second);
    } else {
      groups_.erase(it);
    }
    emit_change(out, t.key, t.old_row, new_row, epoch);
  }
  consolidate_in_place(out);
  return out;
}

// ---------------------------------------------------------------------------
// ix

IxState::IxState(const IxParams& params, const Schema& left, std::string label)
    : label_(std::move(label)),
      key_(params.key, left),
      target_columns_(params.target_columns),
      policy_(params.policy) {}

Update IxState::prepare_left(const Update& in) const {
  try {
    Key target = key_.eval(in.row, in.key).as_key();
    Row row;
    row.reserve(in.row.size() + 1);
    row.emplace_back(in.key);
    row.insert(row.end(), in.row.begin(), in.row.end());
    return Update{target, std::move(row), in.diff, in.epoch};
  } catch (const EvalError& e) {
    throw EngineError(label_, e.key(), in.epoch, e.reason() + " at " + e.path());
  }
}

Row IxState::joined(const Row& left_row, const Row& target_row) const {
  Row row;
  row.reserve(left_row.size() + target_columns_.size());
  row.insert(row.end(), left_row.begin(), left_row.end());
  for (auto c : target_columns_) row.push_back(target_row[c]);
  return row;
}

std::vector<Update> IxState::apply(std::vector<Update> left, std::vector<Update> target, Epoch epoch) {
  consolidate_in_place(left);
  consolidate_in_place(target);
  std::vector<Update> out;

  merge_by_key(left, target, [&](const Key& key, std::size_t li, std::size_t le, std::size_t ti,
                                 std::size_t te) {
    try {
      std::optional<Row> old_target = copy_of(target_.unique(key));
      for (std::size_t t = ti; t < te; ++t) target_.update(key, target[t].row, target[t].diff);
      const Row* new_target = target_.unique(key);

      if (old_target != copy_of(new_target)) {
        for (const auto& rec : left_.find(key)) {
          if (old_target) out.push_back(Update{rec.id, joined(rec.row, *old_target), -rec.mult, epoch});
          if (new_target) out.push_back(Update{rec.id, joined(rec.row, *new_target), rec.mult, epoch});
        }
      }
      for (std::size_t l = li; l < le; ++l) {
        const Update& u = left[l];
        Key id = u.row[0].as_key();
        Row row(u.row.begin() + 1, u.row.end());
        if (new_target) out.push_back(Update{id, joined(row, *new_target), u.diff, epoch});
        left_.update(key, id, row, u.diff);
      }
      if (!new_target && policy_ == IxPolicy::Strict) {
        auto dangling = left_.find(key);
        if (!dangling.empty()) {
          throw EngineError(label_, key, epoch,
                            "dangling ix reference: key " + key.hex() + " (referenced by row " +
                                dangling.front().id.hex() + ") is missing from the target");
        }
      }
    } catch (const EngineError&) {
      throw;
    } catch (const Error& e) {
      throw EngineError(label_, key, epoch, e.what());
    }
  });
  consolidate_in_place(out);
  return out;
}

// ---------------------------------------------------------------------------
// difference / update_rows / concat

SetOpState::SetOpState(OpKind kind, std::string label)
    : kind_(kind), label_(label.empty() ? std::string(op_kind_name(kind)) : std::move(label)) {}

const Row* SetOpState::output_for(const Key& key, Epoch epoch) const {
  switch (kind_) {
    case OpKind::Difference:
      return b_.find(key).empty() ? a_.unique(key) : nullptr;
    case OpKind::UpdateRows: {
      const Row* b = b_.unique(key);
      return b ? b : a_.unique(key);
    }
    case OpKind::Concat: {
      const Row* a = a_.unique(key);
      const Row* b = b_.unique(key);
      if (a && b) throw EngineError(label_, key, epoch, "concat inputs share key " + key.hex());
      return a ? a : b;
    }
    default: break;
  }
  throw Error("SetOpState: unsupported operator " + std::string(op_kind_name(kind_)));
}

std::vector<Update> SetOpState::apply(std::vector<Update> a, std::vector<Update> b, Epoch epoch) {
  consolidate_in_place(a);
  consolidate_in_place(b);
  std::vector<Update> out;
  merge_by_key(a, b, [&](const Key& key, std::size_t ai, std::size_t ae, std::size_t bi, std::size_t be) {
    try {
      std::optional<Row> old_row = copy_of(output_for(key, epoch));
      for (std::size_t i = ai; i < ae; ++i) a_.update(key, a[i].row, a[i].diff);
      for (std::size_t i = bi; i < be; ++i) b_.update(key, b[i].row, b[i].diff);
      emit_change(out, key, old_row, copy_of(output_for(key, epoch)), epoch);
    } catch (const EngineError&) {
      throw;
    } catch (const Error& e) {
      throw EngineError(label_, key, epoch, e.what());
    }
  });
  consolidate_in_place(out);
  return out;
}

}  // namespace deltaflow
