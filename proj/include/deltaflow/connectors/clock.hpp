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
#include <chrono>
#include <cstdint>

#include "deltaflow/engine/engine.hpp"

namespace deltaflow::connectors {

/// Wall time since construction.
class SteadyClock final : public Clock {
 public:
  SteadyClock() : start_(std::chrono::steady_clock::now()) {}
  std::int64_t now_us() const override;
  void sleep_until(std::int64_t us) override;

 private:
  std::chrono::steady_clock::time_point start_;
};

/// Deterministic clock: time moves only when someone sleeps or advances it.
class SimulatedClock final : public Clock {
 public:
  std::int64_t now_us() const override { return now_.load(); }
  void sleep_until(std::int64_t us) override;
  void advance(std::int64_t us) { now_ += us; }

 private:
  std::atomic<std::int64_t> now_{0};
};

}  // namespace deltaflow::connectors
