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
#include <string>
#include <vector>

#include "deltaflow/core/schema.hpp"
#include "deltaflow/core/value.hpp"

namespace deltaflow {

enum class BinaryOp { Add, Sub, Mul, FloorDiv, Eq, Ne, Lt, Le, Gt, Ge, And, Or };

std::string_view op_symbol(BinaryOp op);

/// Immutable typed expression tree over the columns of one table.
///
/// Expressions are cheap to copy (shared nodes). Column references are
/// resolved by name when the expression is compiled against a schema.
class Expr {
 public:
  enum class Kind { ColumnRef, Const, Binary, IfElse, ThisId, PointerFrom };

  Expr(const Value& constant);
  Expr(int constant) : Expr(Value(constant)) {}
  Expr(std::int64_t constant) : Expr(Value(constant)) {}
  Expr(double constant) : Expr(Value(constant)) {}
  Expr(const char* constant) : Expr(Value(constant)) {}
  Expr(std::string constant) : Expr(Value(std::move(constant))) {}

  static Expr column(std::string name);
  static Expr constant(Value value);
  static Expr binary(BinaryOp op, Expr lhs, Expr rhs);
  static Expr if_else(Expr cond, Expr then_branch, Expr else_branch);
  static Expr this_id();
  static Expr pointer_from(std::vector<Expr> args);

  Kind kind() const;
  const std::string& column_name() const;
  const Value& constant_value() const;
  BinaryOp op() const;
  const std::vector<Expr>& args() const;

  /// Names of all columns referenced anywhere in the tree.
  std::vector<std::string> referenced_columns() const;

  std::string to_string() const;

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

/// Structural equality (operator== builds an expression instead).
bool structurally_equal(const Expr& a, const Expr& b);

inline Expr col(std::string name) { return Expr::column(std::move(name)); }
inline Expr lit(Value value) { return Expr::constant(std::move(value)); }
inline Expr this_id() { return Expr::this_id(); }
inline Expr pointer_from(std::vector<Expr> args) { return Expr::pointer_from(std::move(args)); }
inline Expr if_else(Expr c, Expr a, Expr b) {
  return Expr::if_else(std::move(c), std::move(a), std::move(b));
}
/// Floor division, rounding toward negative infinity.
inline Expr floordiv(Expr a, Expr b) {
  return Expr::binary(BinaryOp::FloorDiv, std::move(a), std::move(b));
}

inline Expr operator+(Expr a, Expr b) { return Expr::binary(BinaryOp::Add, std::move(a), std::move(b)); }
inline Expr operator-(Expr a, Expr b) { return Expr::binary(BinaryOp::Sub, std::move(a), std::move(b)); }
inline Expr operator*(Expr a, Expr b) { return Expr::binary(BinaryOp::Mul, std::move(a), std::move(b)); }
inline Expr operator==(Expr a, Expr b) { return Expr::binary(BinaryOp::Eq, std::move(a), std::move(b)); }
inline Expr operator!=(Expr a, Expr b) { return Expr::binary(BinaryOp::Ne, std::move(a), std::move(b)); }
inline Expr operator<(Expr a, Expr b) { return Expr::binary(BinaryOp::Lt, std::move(a), std::move(b)); }
inline Expr operator<=(Expr a, Expr b) { return Expr::binary(BinaryOp::Le, std::move(a), std::move(b)); }
inline Expr operator>(Expr a, Expr b) { return Expr::binary(BinaryOp::Gt, std::move(a), std::move(b)); }
inline Expr operator>=(Expr a, Expr b) { return Expr::binary(BinaryOp::Ge, std::move(a), std::move(b)); }
inline Expr operator&&(Expr a, Expr b) { return Expr::binary(BinaryOp::And, std::move(a), std::move(b)); }
inline Expr operator||(Expr a, Expr b) { return Expr::binary(BinaryOp::Or, std::move(a), std::move(b)); }

/// Result type of `expr` against `schema`. Throws TypeError carrying the
/// expression path (e.g. "$.rhs.lhs") and the offending types.
Type typecheck(const Expr& expr, const Schema& schema);

/// An expression bound to a schema: column names resolved to positions and
/// types checked once, ready for row-wise evaluation.
class CompiledExpr {
 public:
  CompiledExpr(const Expr& expr, const Schema& schema);

  Type type() const { return type_; }

  /// Evaluates against one row. Throws EvalError (with `key` and the
  /// sub-expression path) on division by zero or integer overflow.
  Value eval(const Row& row, const Key& key) const;

 private:
  struct Node {
    Expr::Kind kind;
    BinaryOp op = BinaryOp::Add;
    Type type = Type::None;
    std::size_t column = 0;
    Value constant;
    std::vector<Node> args;
    std::string path;
  };

  static Node compile(const Expr& expr, const Schema& schema, const std::string& path);
  static Value eval_node(const Node& node, const Row& row, const Key& key);
  static Value eval_binary(const Node& node, const Row& row, const Key& key);

  Node root_;
  Type type_;
};

/// One-shot evaluation: typecheck, compile and evaluate.
Value eval(const Expr& expr, const Row& row, const Key& key, const Schema& schema);

}  // namespace deltaflow
