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

#include "deltaflow/connectors/clock.hpp"

#include <thread>

namespace deltaflow::connectors {

std::int64_t SteadyClock::now_us() const {
  return std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start_)
      .count();
}

void SteadyClock::sleep_until(std::int64_t us) {
  std::this_thread::sleep_until(start_ + std::chrono::microseconds(us));
}

void SimulatedClock::sleep_until(std::int64_t us) {
  std::int64_t now = now_.load();
  while (now < us && !now_.compare_exchange_weak(now, us)) {
  }
}

}  // namespace deltaflow::connectors
