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
#include <vector>

#include "deltaflow/core/update.hpp"

namespace deltaflow {

/// Per-source commit progress. The global output epoch is the minimum over
/// sources; an epoch closes exactly once, when every source has committed it.
class Frontier {
 public:
  explicit Frontier(std::size_t sources) : committed_(sources) {}

  /// Records that `source` committed `epoch`, which must exceed its previous
  /// commit. Returns the epochs this closes, ascending. Throws ProtocolError
  /// on a non-monotone commit.
  std::vector<Epoch> advance(std::size_t source, Epoch epoch);

  std::optional<Epoch> committed(std::size_t source) const { return committed_.at(source); }

  /// Highest closed epoch, if any.
  std::optional<Epoch> output_epoch() const { return closed_; }

  std::size_t sources() const { return committed_.size(); }

 private:
  std::vector<std::optional<Epoch>> committed_;
  std::optional<Epoch> closed_;
};

}  // namespace deltaflow
