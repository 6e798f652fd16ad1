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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "deltaflow/core/value.hpp"

namespace deltaflow {

/// Opaque identifier of a table's key set.
struct UniverseId {
  std::uint32_t value = 0;
  friend constexpr auto operator<=>(const UniverseId&, const UniverseId&) = default;
};

struct Column {
  std::string name;
  Type type;

  friend bool operator==(const Column&, const Column&) = default;
};

/// Ordered, uniquely named columns plus the identity of the key universe.
class Schema {
 public:
  Schema() = default;
  /// Throws TypeError on duplicate column names.
  explicit Schema(std::vector<Column> columns, UniverseId universe = {});

  const std::vector<Column>& columns() const { return columns_; }
  std::size_t size() const { return columns_.size(); }
  const Column& operator[](std::size_t i) const { return columns_[i]; }
  UniverseId universe() const { return universe_; }

  std::optional<std::size_t> index_of(std::string_view name) const;
  /// Throws TypeError naming the column when absent.
  std::size_t require(std::string_view name) const;

  Schema with_universe(UniverseId universe) const;

  /// Same column names and types, ignoring universe.
  bool same_columns(const Schema& other) const { return columns_ == other.columns_; }

  std::string to_string() const;

 private:
  std::vector<Column> columns_;
  UniverseId universe_;
};

}  // namespace deltaflow
