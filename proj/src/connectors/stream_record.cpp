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

#include "deltaflow/connectors/stream_record.hpp"

#include "deltaflow/core/errors.hpp"

namespace deltaflow::connectors {

CommitPolicy CommitPolicy::every_n_records(std::uint64_t n) {
  if (n == 0) throw Error("every_n_records: n must be positive");
  return {Kind::EveryRecords, n, 0};
}

CommitPolicy CommitPolicy::every_millis(std::int64_t ms) {
  if (ms <= 0) throw Error("every_millis: interval must be positive");
  return {Kind::EveryMillis, 0, ms};
}

std::optional<StreamRecord> VectorSource::next() {
  if (pos_ >= records_.size()) return std::nullopt;
  return records_[pos_++];
}

CommittingSource::CommittingSource(std::unique_ptr<RecordSource> inner, CommitPolicy policy)
    : inner_(std::move(inner)), policy_(policy) {}

std::optional<StreamRecord> CommittingSource::next() {
  if (pending_commit_) {
    pending_commit_ = false;
    since_commit_ = 0;
    return StreamRecord::commit();
  }
  while (!done_) {
    auto record = inner_->next();
    if (!record) {
      done_ = true;
      break;
    }
    if (!record->is_data()) {
      if (policy_.kind != CommitPolicy::Kind::Explicit) continue;
      since_commit_ = 0;
      return record;
    }
    ++since_commit_;
    if (policy_.kind == CommitPolicy::Kind::EveryRecords && since_commit_ >= policy_.records) {
      pending_commit_ = true;
    }
    return record;
  }
  if (since_commit_ > 0) {
    since_commit_ = 0;
    return StreamRecord::commit();
  }
  return std::nullopt;
}

std::vector<StreamRecord> drain(RecordSource& source) {
  std::vector<StreamRecord> out;
  while (auto r = source.next()) out.push_back(std::move(*r));
  return out;
}

std::vector<EpochResult> feed(Engine& engine, std::size_t source, const StreamRecord& record) {
  switch (record.kind) {
    case StreamRecord::Kind::Insert: engine.insert(source, record.values); return {};
    case StreamRecord::Kind::Delete: engine.erase(source, record.values); return {};
    case StreamRecord::Kind::Commit: return engine.commit(source);
  }
  return {};
}

}  // namespace deltaflow::connectors
