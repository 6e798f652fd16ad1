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

#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "deltaflow/core/value.hpp"
#include "deltaflow/engine/engine.hpp"

namespace deltaflow::connectors {

/// External wire unit: a data insert/delete (values in schema order) or a
/// COMMIT control message.
struct StreamRecord {
  enum class Kind { Insert, Delete, Commit };
  Kind kind = Kind::Insert;
  Row values;

  static StreamRecord insert(Row values) { return {Kind::Insert, std::move(values)}; }
  static StreamRecord erase(Row values) { return {Kind::Delete, std::move(values)}; }
  static StreamRecord commit() { return {Kind::Commit, {}}; }

  bool is_data() const { return kind != Kind::Commit; }
  friend bool operator==(const StreamRecord&, const StreamRecord&) = default;
};

/// A record stamped at source admission.
struct TimestampedRecord {
  StreamRecord record;
  std::int64_t ingress_ms = 0;
  /// Emitted during the replay burn-in ramp; excluded from latency stats.
  bool burn_in = false;
};

/// When a source emits COMMIT messages. Exactly one policy per source;
/// explicit COMMIT records in the input are honoured only by `explicit`.
struct CommitPolicy {
  enum class Kind { EveryRecords, EveryMillis, Explicit, EndOfInput };
  Kind kind = Kind::EndOfInput;
  std::uint64_t records = 0;
  std::int64_t millis = 0;

  static CommitPolicy every_n_records(std::uint64_t n);
  static CommitPolicy every_millis(std::int64_t ms);
  static CommitPolicy explicit_commits() { return {Kind::Explicit, 0, 0}; }
  static CommitPolicy end_of_input_only() { return {Kind::EndOfInput, 0, 0}; }
};

/// Pull-based record stream; nullopt marks end of input.
class RecordSource {
 public:
  virtual ~RecordSource() = default;
  virtual std::optional<StreamRecord> next() = 0;
};

/// In-memory source, mostly for tests and generated datasets.
class VectorSource final : public RecordSource {
 public:
  explicit VectorSource(std::vector<StreamRecord> records) : records_(std::move(records)) {}
  std::optional<StreamRecord> next() override;

 private:
  std::vector<StreamRecord> records_;
  std::size_t pos_ = 0;
};

/// Applies a count-based commit policy on top of another source and ends the
/// stream with a final COMMIT when data is outstanding. Time-based commits
/// need a clock and are injected by TimedSource; here every_millis behaves
/// like end_of_input_only.
class CommittingSource final : public RecordSource {
 public:
  CommittingSource(std::unique_ptr<RecordSource> inner, CommitPolicy policy);
  std::optional<StreamRecord> next() override;

 private:
  std::unique_ptr<RecordSource> inner_;
  CommitPolicy policy_;
  std::uint64_t since_commit_ = 0;
  bool pending_commit_ = false;
  bool done_ = false;
};

std::vector<StreamRecord> drain(RecordSource& source);

/// Hands one record to the engine; returns epochs closed by a COMMIT.
std::vector<EpochResult> feed(Engine& engine, std::size_t source, const StreamRecord& record);

}  // namespace deltaflow::connectors
