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

#include "deltaflow/engine/frontier.hpp"

#include <algorithm>
#include <string>

#include "deltaflow/core/errors.hpp"

namespace deltaflow {

std::vector<Epoch> Frontier::advance(std::size_t source, Epoch epoch) {
  auto& last = committed_.at(source);
  if (last && epoch <= *last) {
    throw ProtocolError("non-monotone commit on source " + std::to_string(source) + ": epoch " +
                        std::to_string(epoch) + " after " + std::to_string(*last));
  }
  last = epoch;

  std::optional<Epoch> low;
  for (const auto& c : committed_) {
    if (!c) return {};
    low = low ? std::min(*low, *c) : *c;
  }
  std::vector<Epoch> closed;
  Epoch next = closed_ ? *closed_ + 1 : 0;
  for (Epoch e = next; e <= *low; ++e) closed.push_back(e);
  if (!closed.empty()) closed_ = *low;
  return closed;
}

}  // namespace deltaflow
