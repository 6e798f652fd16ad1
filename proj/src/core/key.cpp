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

#include "deltaflow/core/key.hpp"

#include <sodium.h>

#include <bit>
#include <mutex>
#include <stdexcept>
#include <string>

namespace deltaflow {

namespace {

void ensure_sodium() {
  static std::once_flag once;
  std::call_once(once, [] {
    if (sodium_init() < 0) throw std::runtime_error("libsodium initialisation failed");
  });
}

void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void encode(std::string& out, const Value& value) {
  out.push_back(static_cast<char>(value.type()));
  switch (value.type()) {
    case Type::Int: put_u64(out, static_cast<std::uint64_t>(value.as_int())); break;
    case Type::Float: put_u64(out, std::bit_cast<std::uint64_t>(value.as_float())); break;
    case Type::String:
      put_u64(out, value.as_string().size());
      out += value.as_string();
      break;
    case Type::Bool: out.push_back(value.as_bool() ? 1 : 0); break;
    case Type::Key:
      put_u64(out, value.as_key().hi);
      put_u64(out, value.as_key().lo);
      break;
    case Type::None: break;
  }
}

}  // namespace

Key hash_key(std::span<const Value> values) {
  if (values.empty()) throw std::invalid_argument("hash_key requires at least one value");
  ensure_sodium();
  thread_local std::string buffer;
  buffer.clear();
  for (const auto& v : values) encode(buffer, v);

  unsigned char digest[16];
  crypto_generichash(digest, sizeof(digest), reinterpret_cast<const unsigned char*>(buffer.data()),
                     buffer.size(), nullptr, 0);
  Key key;
  for (int i = 0; i < 8; ++i) key.hi = (key.hi << 8) | digest[i];
  for (int i = 8; i < 16; ++i) key.lo = (key.lo << 8) | digest[i];
  return key;
}

}  // namespace deltaflow
