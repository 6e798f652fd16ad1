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

#include <condition_variable>
#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <vector>

#include "deltaflow/connectors/stream_record.hpp"
#include "deltaflow/engine/engine.hpp"

namespace deltaflow::connectors {

struct ReplaySpec {
  /// Target mean rate in records per second; <= 0 replays unpaced.
  double records_per_second = 0;
  /// Length of the linear warm-up ramp.
  std::int64_t burn_in_ms = 0;
  /// Rate at t=0 as a fraction of the target.
  double burn_in_start = 0.1;
  std::int64_t tick_ms = 10;
  std::uint64_t seed = 1;
};

/// Bursty arrival times. Each tick emits a geometric number of records whose
/// mean is the backlog owed against the target curve, so bursts are followed
/// by quiet ticks and the long-run rate tracks the target.
class ReplayScheduler {
 public:
  explicit ReplayScheduler(const ReplaySpec& spec);

  /// Scheduled time (us since start) of the next record.
  std::int64_t next_us();
  bool in_burn_in(std::int64_t us) const { return us < spec_.burn_in_ms * 1000; }
  /// Target rate at `us`, records per second.
  double rate_at(std::int64_t us) const;
  const ReplaySpec& spec() const { return spec_; }

 private:
  void fill_tick();

  ReplaySpec spec_;
  std::mt19937_64 rng_;
  std::int64_t tick_ = 0;
  double owed_ = 0;
  std::vector<std::int64_t> slots_;
  std::size_t slot_ = 0;
};

/// Arrival times of the first `n` records.
std::vector<std::int64_t> replay_schedule(std::size_t n, const ReplaySpec& spec);

/// Paces a record source on a clock and stamps ingress times. Commits come
/// from `policy`; every_millis commits fall on multiples of the interval.
class TimedSource {
 public:
  TimedSource(std::unique_ptr<RecordSource> inner, const ReplaySpec& spec, CommitPolicy policy,
              Clock& clock);

  std::optional<TimestampedRecord> next();

 private:
  std::optional<TimestampedRecord> commit_now();

  std::unique_ptr<RecordSource> inner_;
  ReplayScheduler scheduler_;
  CommitPolicy policy_;
  Clock& clock_;
  bool paced_;
  std::optional<StreamRecord> peeked_;
  std::int64_t peeked_at_ = 0;
  bool done_ = false;
  bool peeked_commit_ = false;
  std::uint64_t since_commit_ = 0;
  std::int64_t next_commit_us_ = 0;
};

/// Blocking multi-producer queue with a capacity bound and close().
template <typename T>
class BoundedQueue {
 public:
  explicit BoundedQueue(std::size_t capacity) : capacity_(capacity ? capacity : 1) {}

  /// Returns false once the queue is closed.
  bool push(T item) {
    std::unique_lock lock(mutex_);
    not_full_.wait(lock, [&] { return closed_ || items_.size() < capacity_; });
    if (closed_) return false;
    items_.push_back(std::move(item));
    not_empty_.notify_one();
    return true;
  }

  /// nullopt once closed and drained.
  std::optional<T> pop() {
    std::unique_lock lock(mutex_);
    not_empty_.wait(lock, [&] { return closed_ || !items_.empty(); });
    if (items_.empty()) return std::nullopt;
    T item = std::move(items_.front());
    items_.pop_front();
    not_full_.notify_one();
    return item;
  }

  void close() {
    std::lock_guard lock(mutex_);
    closed_ = true;
    not_empty_.notify_all();
    not_full_.notify_all();
  }

 private:
  std::size_t capacity_;
  std::mutex mutex_;
  std::condition_variable not_empty_;
  std::condition_variable not_full_;
  std::deque<T> items_;
  bool closed_ = false;
};

}  // namespace deltaflow::connectors
