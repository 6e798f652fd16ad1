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

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace deltaflow {

/// 128-bit row identifier. Produced only by hash_key(); no arithmetic.
struct Key {
  std::uint64_t hi = 0;
  std::uint64_t lo = 0;

  friend constexpr auto operator<=>(const Key&, const Key&) = default;

  /// 32 lowercase hex digits, high word first.
  std::string hex() const;
  static Key from_hex(std::string_view text);
};

struct KeyHasher {
  std::size_t operator()(const Key& key) const noexcept {
    return static_cast<std::size_t>(key.lo ^ (key.hi * 0x9e3779b97f4a7c15ULL));
  }
};

/// Value type tags. Declaration order is the cross-type sort order.
enum class Type : std::uint8_t { Int, Float, String, Bool, Key, None };

std::string_view type_name(Type type);

struct None {
  friend constexpr bool operator==(None, None) { return true; }
};

/// Tagged union of the engine's scalar types.
///
/// Ordering is total: by type tag first, then by value. Floats are compared
/// and hashed by bit pattern so that equality inside the engine is exact and
/// NaNs do not break consolidation.
class Value {
 public:
  using Storage = std::variant<std::int64_t, double, std::string, bool, Key, None>;

  Value() : data_(None{}) {}
  Value(std::int64_t v) : data_(v) {}
  Value(int v) : data_(static_cast<std::int64_t>(v)) {}
  Value(double v) : data_(v) {}
  Value(std::string v) : data_(std::move(v)) {}
  Value(std::string_view v) : data_(std::string(v)) {}
  Value(const char* v) : data_(std::string(v)) {}
  Value(bool v) : data_(v) {}
  Value(Key v) : data_(v) {}
  Value(None v) : data_(v) {}

  Type type() const { return static_cast<Type>(data_.index()); }

  bool is_none() const { return type() == Type::None; }
  std::int64_t as_int() const { return std::get<std::int64_t>(data_); }
  double as_float() const { return std::get<double>(data_); }
  const std::string& as_string() const { return std::get<std::string>(data_); }
  bool as_bool() const { return std::get<bool>(data_); }
  Key as_key() const { return std::get<Key>(data_); }

  const Storage& storage() const { return data_; }

  friend bool operator==(const Value& a, const Value& b);
  friend std::strong_ordering operator<=>(const Value& a, const Value& b);

  /// Human-readable rendering used in error messages and reports.
  std::string to_string() const;

 private:
  Storage data_;
};

using Row = std::vector<Value>;

std::strong_ordering compare_rows(std::span<const Value> a, std::span<const Value> b);

std::string row_to_string(std::span<const Value> row);

}  // namespace deltaflow
