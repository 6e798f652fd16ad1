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

#include "deltaflow/engine/exchange.hpp"

namespace deltaflow {

bool WorkerPlan::needs_exchange(OpKind kind) {
  switch (kind) {
    case OpKind::GroupByReduce:
    case OpKind::IxJoin:
    case OpKind::Difference:
    case OpKind::UpdateRows:
    case OpKind::Concat: return true;
    default: return false;
  }
}

std::vector<std::vector<Update>> exchange(std::span<const Update> updates, const WorkerPlan& plan) {
  std::vector<std::vector<Update>> out(std::max<std::size_t>(plan.workers, 1));
  for (const auto& u : updates) out[plan.owner(u.key)].push_back(u);
  return out;
}

}  // namespace deltaflow
