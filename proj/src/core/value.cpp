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

#include "deltaflow/core/value.hpp"

#include <bit>
#include <charconv>
#include <cstdio>
#include <stdexcept>

namespace deltaflow {

namespace {

// Monotone map of IEEE-754 bit patterns onto unsigned integers.
std::uint64_t float_order_bits(double v) {
  auto bits = std::bit_cast<std::uint64_t>(v);
  constexpr std::uint64_t sign = 1ULL << 63;
  return (bits & sign) ? ~bits : (bits | sign);
}

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

std::string Key::hex() const {
  char buf[33];
  std::snprintf(buf, sizeof(buf), "%016llx%016llx", static_cast<unsigned long long>(hi),
                static_cast<unsigned long long>(lo));
  return std::string(buf, 32);
}

Key Key::from_hex(std::string_view text) {
  if (text.size() != 32) throw std::invalid_argument("key must be 32 hex digits");
  Key key;
  for (std::size_t i = 0; i < 32; ++i) {
    int d = hex_digit(text[i]);
    if (d < 0) throw std::invalid_argument("invalid hex digit in key");
    auto& word = i < 16 ? key.hi : key.lo;
    word = (word << 4) | static_cast<std::uint64_t>(d);
  }
  return key;
}

std::string_view type_name(Type type) {
  switch (type) {
    case Type::Int: return "int";
    case Type::Float: return "float";
    case Type::String: return "string";
    case Type::Bool: return "bool";
    case Type::Key: return "key";
    case Type::None: return "none";
  }
  return "?";
}

bool operator==(const Value& a, const Value& b) {
  if (a.data_.index() != b.data_.index()) return false;
  if (a.type() == Type::Float) {
    return std::bit_cast<std::uint64_t>(a.as_float()) == std::bit_cast<std::uint64_t>(b.as_float());
  }
  return a.data_ == b.data_;
}

std::strong_ordering operator<=>(const Value& a, const Value& b) {
  if (a.data_.index() != b.data_.index()) return a.data_.index() <=> b.data_.index();
  switch (a.type()) {
    case Type::Int: return a.as_int() <=> b.as_int();
    case Type::Float: return float_order_bits(a.as_float()) <=> float_order_bits(b.as_float());
    case Type::String: return a.as_string().compare(b.as_string()) <=> 0;
    case Type::Bool: return a.as_bool() <=> b.as_bool();
    case Type::Key: return a.as_key() <=> b.as_key();
    case Type::None: return std::strong_ordering::equal;
  }
  return std::strong_ordering::equal;
}

std::string Value::to_string() const {
  switch (type()) {
    case Type::Int: return std::to_string(as_int());
    case Type::Float: {
      char buf[32];
      auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), as_float());
      return std::string(buf, end);
    }
    case Type::String: return '"' + as_string() + '"';
    case Type::Bool: return as_bool() ? "true" : "false";
    case Type::Key: return "^" + as_key().hex();
    case Type::None: return "None";
  }
  return "?";
}

std::strong_ordering compare_rows(std::span<const Value> a, std::span<const Value> b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = a[i] <=> b[i]; c != 0) return c;
  }
  return a.size() <=> b.size();
}

std::string row_to_string(std::span<const Value> row) {
  std::string out = "(";
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out += ", ";
    out += row[i].to_string();
  }
  return out + ")";
}

}  // namespace deltaflow
