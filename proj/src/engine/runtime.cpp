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

#include "runtime.hpp"

#include <algorithm>

#include "deltaflow/core/errors.hpp"

namespace deltaflow::detail {

namespace {

class GroupByNode final : public NodeState {
 public:
  GroupByNode(const OperatorNode& node, const Schema& input)
      : state_(std::get<GroupByParams>(node.params), input, node.label()) {}
  bool rekeys(std::size_t) const override { return true; }
  Update prepare(std::size_t, const Update& u) const override { return state_.prepare(u); }
  std::vector<Update> step(Epoch epoch, std::vector<std::vector<Update>>& inputs) override {
    return state_.apply(std::move(inputs[0]), epoch);
  }
  std::size_t rows() const override { return state_.size(); }

 private:
  GroupByState state_;
};

class IxNode final : public NodeState {
 public:
  IxNode(const OperatorNode& node, const Schema& left)
      : state_(std::get<IxParams>(node.params), left, node.label()) {}
  bool rekeys(std::size_t port) const override { return port == 0; }
  Update prepare(std::size_t port, const Update& u) const override {
    return port == 0 ? state_.prepare_left(u) : u;
  }
  std::vector<Update> step(Epoch epoch, std::vector<std::vector<Update>>& inputs) override {
    auto out = state_.apply(std::move(inputs[0]), std::move(inputs[1]), epoch);
    state_.seal(epoch);
    return out;
  }
  std::size_t rows() const override { return state_.size(); }

 private:
  IxState state_;
};

class SetOpNode final : public NodeState {
 public:
  explicit SetOpNode(const OperatorNode& node) : state_(node.kind, node.label()) {}
  std::vector<Update> step(Epoch epoch, std::vector<std::vector<Update>>& inputs) override {
    auto out = state_.apply(std::move(inputs[0]), std::move(inputs[1]), epoch);
    state_.seal(epoch);
    return out;
  }
  std::size_t rows() const override { return state_.size(); }

 private:
  SetOpState state_;
};

}  // namespace

Runtime::Runtime(const OperatorGraph& graph, std::size_t workers)
    : graph_(graph), plan_{std::max<std::size_t>(workers, 1)} {
  const auto& nodes = graph_.nodes();
  const std::size_t w_count = plan_.workers;
  stateless_.resize(nodes.size());
  states_.resize(w_count);
  for (auto& per_worker : states_) per_worker.resize(nodes.size());
  out_.assign(nodes.size(), std::vector<std::vector<Update>>(w_count));
  mail_.resize(nodes.size());
  touches_.assign(w_count, 0);

  for (const auto& node : nodes) {
    const Schema* input = node.inputs.empty() ? nullptr : &graph_.node(node.inputs[0]).schema;
    switch (node.kind) {
      case OpKind::Select:
        stateless_[node.id] = std::make_unique<StatelessOp>(
            StatelessOp::select(std::get<SelectParams>(node.params).outputs, *input, node.label()));
        break;
      case OpKind::Filter:
        stateless_[node.id] = std::make_unique<StatelessOp>(
            StatelessOp::filter(std::get<FilterParams>(node.params).predicate, *input, node.label()));
        break;
      case OpKind::GroupByReduce:
        for (auto& s : states_) s[node.id] = std::make_unique<GroupByNode>(node, *input);
        break;
      case OpKind::IxJoin:
        for (auto& s : states_) s[node.id] = std::make_unique<IxNode>(node, *input);
        break;
      case OpKind::Difference:
      case OpKind::UpdateRows:
      case OpKind::Concat:
        for (auto& s : states_) s[node.id] = std::make_unique<SetOpNode>(node);
        break;
      case OpKind::Source:
      case OpKind::Sink: break;
    }
    if (WorkerPlan::needs_exchange(node.kind) && w_count > 1) {
      mail_[node.id].assign(node.inputs.size(),
                            std::vector<std::vector<std::vector<Update>>>(
                                w_count, std::vector<std::vector<Update>>(w_count)));
    }
  }

  if (w_count > 1) {
    start_ = std::make_unique<std::barrier<>>(static_cast<std::ptrdiff_t>(w_count + 1));
    done_ = std::make_unique<std::barrier<>>(static_cast<std::ptrdiff_t>(w_count + 1));
    sync_ = std::make_unique<std::barrier<>>(static_cast<std::ptrdiff_t>(w_count));
    for (std::size_t w = 0; w < w_count; ++w) threads_.emplace_back([this, w] { worker_main(w); });
  }
}

Runtime::~Runtime() {
  if (!threads_.empty()) {
    stop_ = true;
    start_->arrive_and_wait();
    for (auto& t : threads_) t.join();
  }
}

void Runtime::worker_main(std::size_t worker) {
  while (true) {
    start_->arrive_and_wait();
    if (stop_) return;
    worker_epoch(worker);
    done_->arrive_and_wait();
  }
}

template <typename Fn>
void Runtime::guarded(NodeId node, std::size_t worker, Fn&& fn) {
  if (failed_.load(std::memory_order_relaxed)) return;
  try {
    fn();
  } catch (...) {
    std::lock_guard lock(error_mutex_);
    failures_.push_back(Failure{node, worker, std::current_exception()});
    failed_ = true;
  }
}

void Runtime::worker_epoch(std::size_t w) {
  const std::size_t w_count = plan_.workers;
  for (const auto& node : graph_.nodes()) {
    const NodeId n = node.id;
    if (node.kind == OpKind::Source || node.kind == OpKind::Sink) continue;

    if (stateless_[n]) {
      guarded(n, w, [&] {
        const auto& in = out_[node.inputs[0]][w];
        touches_[w] += in.size();
        out_[n][w] = stateless_[n]->apply(in, epoch_);
      });
      continue;
    }

    NodeState& state = *states_[w][n];
    std::vector<std::vector<Update>> inputs(node.inputs.size());
    if (w_count == 1) {
      guarded(n, w, [&] {
        for (std::size_t p = 0; p < node.inputs.size(); ++p) {
          const auto& in = out_[node.inputs[p]][w];
          inputs[p].reserve(in.size());
          if (state.rekeys(p)) {
            for (const auto& u : in) inputs[p].push_back(state.prepare(p, u));
          } else {
            inputs[p] = in;
          }
        }
      });
    } else {
      guarded(n, w, [&] {
        for (std::size_t p = 0; p < node.inputs.size(); ++p) {
          auto& boxes = mail_[n][p][w];
          for (const auto& u : out_[node.inputs[p]][w]) {
            if (state.rekeys(p)) {
              Update routed = state.prepare(p, u);
              boxes[plan_.owner(routed.key)].push_back(std::move(routed));
            } else {
              boxes[plan_.owner(u.key)].push_back(u);
            }
          }
        }
      });
      sync_->arrive_and_wait();
      guarded(n, w, [&] {
        for (std::size_t p = 0; p < node.inputs.size(); ++p) {
          for (std::size_t from = 0; from < w_count; ++from) {
            auto& box = mail_[n][p][from][w];
            std::move(box.begin(), box.end(), std::back_inserter(inputs[p]));
            box.clear();
          }
        }
      });
    }
    guarded(n, w, [&] {
      for (const auto& in : inputs) touches_[w] += in.size();
      out_[n][w] = state.step(epoch_, inputs);
    });
  }
}

void Runtime::run_epoch(Epoch epoch, std::vector<std::vector<Update>> sources, EpochCounters& counters) {
  epoch_ = epoch;
  for (auto& per_node : out_) {
    for (auto& v : per_node) v.clear();
  }
  std::fill(touches_.begin(), touches_.end(), 0);

  const auto& source_ids = graph_.sources();
  for (std::size_t i = 0; i < source_ids.size(); ++i) {
    counters.updates_in += sources[i].size();
    if (plan_.workers == 1) {
      out_[source_ids[i]][0] = std::move(sources[i]);
    } else {
      for (auto& u : sources[i]) out_[source_ids[i]][plan_.owner(u.key)].push_back(std::move(u));
    }
  }

  if (threads_.empty()) {
    worker_epoch(0);
  } else {
    start_->arrive_and_wait();
    done_->arrive_and_wait();
  }

  if (failed_) {
    auto first = std::min_element(failures_.begin(), failures_.end(), [](const auto& a, const auto& b) {
      return a.node != b.node ? a.node < b.node : a.worker < b.worker;
    });
    std::rethrow_exception(first->error);
  }

  for (auto t : touches_) counters.row_touches += t;
  for (const auto& per_worker : states_) {
    for (const auto& s : per_worker) {
      if (s) counters.arrangement_rows += s->rows();
    }
  }
}

std::vector<Update> Runtime::gather(NodeId node) const {
  std::vector<Update> all;
  for (const auto& part : out_.at(node)) all.insert(all.end(), part.begin(), part.end());
  consolidate_in_place(all);
  return all;
}

}  // namespace deltaflow::detail
