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

#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "deltaflow/connectors/stream_record.hpp"
#include "deltaflow/core/schema.hpp"

namespace deltaflow::connectors {

/// Splits one CSV line. Fields may be double-quoted; inside quotes commas
/// are literal and "" is an escaped quote.
std::vector<std::string> split_csv_line(std::string_view line, std::size_t line_number = 0);

/// CSV source: header row required, columns matched to the schema by name.
/// An optional "_action" column carries insert/delete/commit.
class CsvReader final : public RecordSource {
 public:
  CsvReader(const std::string& path, Schema schema);
  std::optional<StreamRecord> next() override;

 private:
  std::ifstream in_;
  Schema schema_;
  std::vector<std::optional<std::size_t>> field_to_column_;
  std::optional<std::size_t> action_field_;
  std::size_t line_ = 0;
};

}  // namespace deltaflow::connectors
