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

#include "deltaflow/connectors/replay.hpp"

#include <algorithm>
#include <cmath>

#include "deltaflow/core/errors.hpp"

namespace deltaflow::connectors {

namespace {

// Geometric on {0,1,...} with the given mean, by inversion.
std::uint64_t draw_geometric(std::mt19937_64& rng, double mean) {
  if (mean <= 0) return 0;
  double u = (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
  double q = mean / (1.0 + mean);
  return static_cast<std::uint64_t>(std::floor(std::log(u) / std::log(q)));
}

}  // namespace

ReplayScheduler::ReplayScheduler(const ReplaySpec& spec) : spec_(spec), rng_(spec.seed) {
  if (spec_.tick_ms <= 0) throw Error("replay tick must be positive");
  if (spec_.burn_in_start < 0 || spec_.burn_in_start > 1) throw Error("burn_in_start must be in [0, 1]");
}

double ReplayScheduler::rate_at(std::int64_t us) const {
  const double rate = spec_.records_per_second;
  const std::int64_t ramp_us = spec_.burn_in_ms * 1000;
  if (us >= ramp_us) return rate;
  double f = static_cast<double>(us) / static_cast<double>(ramp_us);
  return rate * (spec_.burn_in_start + (1.0 - spec_.burn_in_start) * f);
}

void ReplayScheduler::fill_tick() {
  slots_.clear();
  slot_ = 0;
  while (slots_.empty()) {
    const std::int64_t tick_us = spec_.tick_ms * 1000;
    const std::int64_t start = tick_ * tick_us;
    owed_ += rate_at(start + tick_us / 2) * static_cast<double>(spec_.tick_ms) / 1000.0;
    std::uint64_t count = draw_geometric(rng_, owed_);
    owed_ -= static_cast<double>(count);
    for (std::uint64_t j = 0; j < count; ++j) {
      slots_.push_back(start + static_cast<std::int64_t>(j) * tick_us / static_cast<std::int64_t>(count));
    }
    ++tick_;
  }
}

std::int64_t ReplayScheduler::next_us() {
  if (spec_.records_per_second <= 0) return 0;
  if (slot_ >= slots_.size()) fill_tick();
  return slots_[slot_++];
}

std::vector<std::int64_t> replay_schedule(std::size_t n, const ReplaySpec& spec) {
  ReplayScheduler scheduler(spec);
  std::vector<std::int64_t> out(n);
  for (auto& t : out) t = scheduler.next_us();
  return out;
}

TimedSource::TimedSource(std::unique_ptr<RecordSource> inner, const ReplaySpec& spec,
                         CommitPolicy policy, Clock& clock)
    : inner_(std::move(inner)),
      scheduler_(spec),
      policy_(policy),
      clock_(clock),
      paced_(spec.records_per_second > 0),
      next_commit_us_(policy.kind == CommitPolicy::Kind::EveryMillis ? policy.millis * 1000 : 0) {}

std::optional<TimestampedRecord> TimedSource::commit_now() {
  since_commit_ = 0;
  const std::int64_t now = clock_.now_us();
  return TimestampedRecord{StreamRecord::commit(), now / 1000, scheduler_.in_burn_in(now)};
}

std::optional<TimestampedRecord> TimedSource::next() {
  if (peeked_commit_) {
    peeked_commit_ = false;
    return commit_now();
  }
  if (!peeked_ && !done_) {
    while (true) {
      auto r = inner_->next();
      if (!r) {
        done_ = true;
        break;
      }
      if (!r->is_data() && policy_.kind != CommitPolicy::Kind::Explicit) continue;
      peeked_ = std::move(r);
      if (peeked_->is_data()) peeked_at_ = paced_ ? scheduler_.next_us() : clock_.now_us();
      break;
    }
  }

  if (policy_.kind == CommitPolicy::Kind::EveryMillis) {
    const std::int64_t interval = policy_.millis * 1000;
    const std::int64_t horizon = peeked_ ? peeked_at_ : clock_.now_us();
    if (horizon >= next_commit_us_) {
      const std::int64_t boundary = next_commit_us_;
      next_commit_us_ = (horizon / interval + 1) * interval;
      if (since_commit_ > 0) {
        clock_.sleep_until(boundary);
        return commit_now();
      }
    }
  }

  if (!peeked_) {
    if (since_commit_ > 0) return commit_now();
    return std::nullopt;
  }

  StreamRecord record = std::move(*peeked_);
  peeked_.reset();
  if (!record.is_data()) return commit_now();

  if (paced_) clock_.sleep_until(peeked_at_);
  const std::int64_t now = clock_.now_us();
  TimestampedRecord out{std::move(record), now / 1000, scheduler_.in_burn_in(paced_ ? peeked_at_ : now)};
  ++since_commit_;
  if (policy_.kind == CommitPolicy::Kind::EveryRecords && since_commit_ >= policy_.records) {
    // Emitted on the following call, after this record.
    peeked_commit_ = true;
  }
  return out;
}

}  // namespace deltaflow::connectors
