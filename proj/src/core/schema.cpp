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

#include "deltaflow/core/schema.hpp"

#include <set>

#include "deltaflow/core/errors.hpp"

namespace deltaflow {

Schema::Schema(std::vector<Column> columns, UniverseId universe)
    : columns_(std::move(columns)), universe_(universe) {
  std::set<std::string_view> seen;
  for (const auto& c : columns_) {
    if (!seen.insert(c.name).second) throw TypeError("", "duplicate column '" + c.name + "'");
  }
}

std::optional<std::size_t> Schema::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i].name == name) return i;
  }
  return std::nullopt;
}

std::size_t Schema::require(std::string_view name) const {
  if (auto i = index_of(name)) return *i;
  throw TypeError("", "unknown column '" + std::string(name) + "' in " + to_string());
}

Schema Schema::with_universe(UniverseId universe) const {
  Schema copy = *this;
  copy.universe_ = universe;
  return copy;
}

std::string Schema::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (i) out += ", ";
    out += columns_[i].name;
    out += ": ";
    out += type_name(columns_[i].type);
  }
  return out + "}";
}

}  // namespace deltaflow
