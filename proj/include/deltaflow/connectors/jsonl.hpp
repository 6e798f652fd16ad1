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
#include <fstream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "deltaflow/connectors/stream_record.hpp"
#include "deltaflow/core/schema.hpp"
#include "deltaflow/core/update.hpp"
#include "deltaflow/engine/engine.hpp"

namespace deltaflow::connectors {

// Input JSONL: one object per line. Plain objects are inserts; the reserved
// field "_action" may be "delete" (payload follows) or "commit". Other
// underscore-prefixed fields are ignored.

/// Parses one input line against `schema`. Throws ParseError (with `line`)
/// on malformed JSON, missing or mistyped columns.
StreamRecord parse_jsonl_record(std::string_view text, const Schema& schema, std::size_t line = 0);

std::string format_jsonl_record(const StreamRecord& record, const Schema& schema);

/// Streams records from a JSONL file in file order.
class JsonlReader final : public RecordSource {
 public:
  JsonlReader(const std::string& path, Schema schema);
  std::optional<StreamRecord> next() override;

 private:
  std::ifstream in_;
  Schema schema_;
  std::size_t line_ = 0;
};

/// JSONL source with `policy` applied (see CommittingSource).
std::unique_ptr<RecordSource> read_jsonl(const std::string& path, const Schema& schema,
                                         CommitPolicy policy);

/// One output line: {"epoch":e,"diff":d,"key":hex,"data":{...},"time_ms":t}.
std::string format_update_line(const Update& update, const Schema& schema, std::int64_t time_ms);

/// Output JSONL sink. Lines within an epoch are written in canonical order;
/// empty epochs write nothing.
class JsonlUpdateWriter final : public SinkWriter {
 public:
  explicit JsonlUpdateWriter(const std::string& path);
  void write(const OperatorNode& sink, Epoch epoch, std::int64_t time_ms,
             std::span<const Update> updates) override;
  void finish() override;

 private:
  std::string path_;
  std::ofstream out_;
};

/// Writes updates (already carrying their epochs) to `path`.
void write_jsonl_updates(const std::vector<Update>& updates, const Schema& schema,
                         const std::string& path, std::int64_t time_ms = 0);

struct LoggedUpdate {
  Update update;
  std::int64_t time_ms = 0;
};

/// Reads an output log back, typing "data" with `schema`.
std::vector<LoggedUpdate> read_jsonl_updates(const std::string& path, const Schema& schema);

}  // namespace deltaflow::connectors
