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
#include <stdexcept>
#include <string>

#include "deltaflow/core/value.hpp"

namespace deltaflow {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Static type error in a column expression or table operation.
class TypeError : public Error {
 public:
  TypeError(std::string path, std::string message)
      : Error(path.empty() ? message : path + ": " + message),
        path_(std::move(path)),
        message_(std::move(message)) {}

  const std::string& path() const { return path_; }
  const std::string& message() const { return message_; }

 private:
  std::string path_;
  std::string message_;
};

/// Invalid pipeline structure detected while building the operator graph.
class BuildError : public Error {
 public:
  using Error::Error;
};

/// Row-level failure while evaluating an expression (division by zero,
/// integer overflow).
class EvalError : public Error {
 public:
  EvalError(Key key, std::string path, std::string message)
      : Error("row " + key.hex() + " at " + path + ": " + message),
        key_(key),
        path_(std::move(path)),
        reason_(std::move(message)) {}

  Key key() const { return key_; }
  const std::string& path() const { return path_; }
  const std::string& reason() const { return reason_; }

 private:
  Key key_;
  std::string path_;
  std::string reason_;
};

/// Fail-stop runtime error raised by an operator during an epoch. Names the
/// operator, the offending key and the epoch.
class EngineError : public Error {
 public:
  EngineError(std::string op, std::optional<Key> key, std::uint64_t epoch, std::string message)
      : Error(format(op, key, epoch, message)),
        op_(std::move(op)),
        key_(key),
        epoch_(epoch),
        reason_(std::move(message)) {}

  const std::string& op() const { return op_; }
  std::optional<Key> key() const { return key_; }
  std::uint64_t epoch() const { return epoch_; }
  const std::string& reason() const { return reason_; }

 private:
  static std::string format(const std::string& op, std::optional<Key> key, std::uint64_t epoch,
                            const std::string& message) {
    std::string out = op + " at epoch " + std::to_string(epoch);
    if (key) out += ", key " + key->hex();
    return out + ": " + message;
  }

  std::string op_;
  std::optional<Key> key_;
  std::uint64_t epoch_;
  std::string reason_;
};

/// Violation of the input protocol (non-monotone commits, bad deletes).
class ProtocolError : public Error {
 public:
  using Error::Error;
};

/// Malformed external input. Carries the 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error(line ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace deltaflow
