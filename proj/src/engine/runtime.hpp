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

#include <atomic>
#include <barrier>
#include <exception>
#include <memory>
#include <mutex>
#include <thread>
#include <vector>

#include "deltaflow/engine/engine.hpp"
#include "deltaflow/engine/exchange.hpp"
#include "deltaflow/engine/operators.hpp"

namespace deltaflow::detail {

// Per-worker state of one stateful operator.
class NodeState {
 public:
  virtual ~NodeState() = default;
  virtual bool rekeys(std::size_t /*port*/) const { return false; }
  virtual Update prepare(std::size_t /*port*/, const Update& u) const { return u; }
  virtual std::vector<Update> step(Epoch epoch, std::vector<std::vector<Update>>& inputs) = 0;
  virtual std::size_t rows() const = 0;
};

/// W symmetric workers, each owning one key partition of every stateful
/// operator. An epoch runs every operator once in topological order; keyed
/// operators first exchange their inputs (barrier), then step locally.
/// With one worker everything runs on the calling thread.
class Runtime {
 public:
  Runtime(const OperatorGraph& graph, std::size_t workers);
  ~Runtime();

  /// `sources[i]` holds the consolidated input of graph.sources()[i].
  /// Rethrows the first operator error (lowest node, then lowest worker).
  void run_epoch(Epoch epoch, std::vector<std::vector<Update>> sources, EpochCounters& counters);

  /// All workers' output of `node` for the last epoch, consolidated.
  std::vector<Update> gather(NodeId node) const;

  std::size_t workers() const { return plan_.workers; }

 private:
  void worker_main(std::size_t worker);
  void worker_epoch(std::size_t worker);
  template <typename Fn>
  void guarded(NodeId node, std::size_t worker, Fn&& fn);

  const OperatorGraph& graph_;
  WorkerPlan plan_;

  // [node] (null for sources, sinks and row-wise operators)
  std::vector<std::unique_ptr<StatelessOp>> stateless_;
  // [worker][node]
  std::vector<std::vector<std::unique_ptr<NodeState>>> states_;
  // [node][worker]
  std::vector<std::vector<std::vector<Update>>> out_;
  // [node][port][from][to]
  std::vector<std::vector<std::vector<std::vector<std::vector<Update>>>>> mail_;
  std::vector<std::uint64_t> touches_;

  Epoch epoch_ = 0;
  std::atomic<bool> failed_{false};
  std::mutex error_mutex_;
  struct Failure {
    NodeId node;
    std::size_t worker;
    std::exception_ptr error;
  };
  std::vector<Failure> failures_;

  bool stop_ = false;
  std::unique_ptr<std::barrier<>> start_;
  std::unique_ptr<std::barrier<>> done_;
  std::unique_ptr<std::barrier<>> sync_;
  std::vector<std::thread> threads_;
};

}  // namespace deltaflow::detail
