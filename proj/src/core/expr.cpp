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

#include "deltaflow/core/expr.hpp"

#include <cmath>
#include <set>

#include "deltaflow/core/errors.hpp"
#include "deltaflow/core/key.hpp"

namespace deltaflow {

struct Expr::Node {
  Kind kind;
  std::string column;
  Value constant;
  BinaryOp op = BinaryOp::Add;
  std::vector<Expr> args;
};

std::string_view op_symbol(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::FloorDiv: return "//";
    case BinaryOp::Eq: return "==";
    case BinaryOp::Ne: return "!=";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Ge: return ">=";
    case BinaryOp::And: return "and";
    case BinaryOp::Or: return "or";
  }
  return "?";
}

Expr::Expr(const Value& constant)
    : node_(std::make_shared<const Node>(Node{Kind::Const, {}, constant, {}, {}})) {}

Expr Expr::column(std::string name) {
  return Expr(std::make_shared<const Node>(Node{Kind::ColumnRef, std::move(name), {}, {}, {}}));
}

Expr Expr::constant(Value value) { return Expr(value); }

Expr Expr::binary(BinaryOp op, Expr lhs, Expr rhs) {
  return Expr(std::make_shared<const Node>(
      Node{Kind::Binary, {}, {}, op, {std::move(lhs), std::move(rhs)}}));
}

Expr Expr::if_else(Expr cond, Expr then_branch, Expr else_branch) {
  return Expr(std::make_shared<const Node>(Node{
      Kind::IfElse, {}, {}, {}, {std::move(cond), std::move(then_branch), std::move(else_branch)}}));
}

Expr Expr::this_id() { return Expr(std::make_shared<const Node>(Node{Kind::ThisId, {}, {}, {}, {}})); }

Expr Expr::pointer_from(std::vector<Expr> args) {
  return Expr(std::make_shared<const Node>(Node{Kind::PointerFrom, {}, {}, {}, std::move(args)}));
}

Expr::Kind Expr::kind() const { return node_->kind; }
const std::string& Expr::column_name() const { return node_->column; }
const Value& Expr::constant_value() const { return node_->constant; }
BinaryOp Expr::op() const { return node_->op; }
const std::vector<Expr>& Expr::args() const { return node_->args; }

std::vector<std::string> Expr::referenced_columns() const {
  std::set<std::string> names;
  auto walk = [&](const Expr& e, auto& self) -> void {
    if (e.kind() == Kind::ColumnRef) names.insert(e.column_name());
    for (const auto& a : e.args()) self(a, self);
  };
  walk(*this, walk);
  return {names.begin(), names.end()};
}

std::string Expr::to_string() const {
  switch (kind()) {
    case Kind::ColumnRef: return column_name();
    case Kind::Const: return constant_value().to_string();
    case Kind::Binary:
      return "(" + args()[0].to_string() + " " + std::string(op_symbol(op())) + " " +
             args()[1].to_string() + ")";
    case Kind::IfElse:
      return "if_else(" + args()[0].to_string() + ", " + args()[1].to_string() + ", " +
             args()[2].to_string() + ")";
    case Kind::ThisId: return "this.id";
    case Kind::PointerFrom: {
      std::string out = "pointer_from(";
      for (std::size_t i = 0; i < args().size(); ++i) {
        if (i) out += ", ";
        out += args()[i].to_string();
      }
      return out + ")";
    }
  }
  return "?";
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Expr::Kind::ColumnRef:
      if (a.column_name() != b.column_name()) return false;
      break;
    case Expr::Kind::Const:
      if (!(a.constant_value() == b.constant_value())) return false;
      break;
    case Expr::Kind::Binary:
      if (a.op() != b.op()) return false;
      break;
    default: break;
  }
  if (a.args().size() != b.args().size()) return false;
  for (std::size_t i = 0; i < a.args().size(); ++i) {
    if (!structurally_equal(a.args()[i], b.args()[i])) return false;
  }
  return true;
}

namespace {

bool is_arithmetic(BinaryOp op) {
  return op == BinaryOp::Add || op == BinaryOp::Sub || op == BinaryOp::Mul ||
         op == BinaryOp::FloorDiv;
}

bool is_ordering(BinaryOp op) {
  return op == BinaryOp::Lt || op == BinaryOp::Le || op == BinaryOp::Gt || op == BinaryOp::Ge;
}

std::string mismatch(Type lhs, BinaryOp op, Type rhs) {
  return std::string(type_name(lhs)) + " " + std::string(op_symbol(op)) + " " +
         std::string(type_name(rhs));
}

Type binary_result(BinaryOp op, Type lhs, Type rhs, const std::string& path) {
  if (is_arithmetic(op)) {
    if (lhs == rhs && (lhs == Type::Int || lhs == Type::Float)) return lhs;
    throw TypeError(path, mismatch(lhs, op, rhs));
  }
  if (op == BinaryOp::And || op == BinaryOp::Or) {
    if (lhs == Type::Bool && rhs == Type::Bool) return Type::Bool;
    throw TypeError(path, mismatch(lhs, op, rhs));
  }
  if (lhs != rhs) throw TypeError(path, mismatch(lhs, op, rhs));
  if (is_ordering(op) && !(lhs == Type::Int || lhs == Type::Float || lhs == Type::String)) {
    throw TypeError(path, mismatch(lhs, op, rhs));
  }
  return Type::Bool;
}

template <typename Op>
std::int64_t checked(Op op, std::int64_t a, std::int64_t b, const Key& key, const std::string& path,
                     std::string_view what) {
  std::int64_t r = 0;
  if (op(a, b, &r)) throw EvalError(key, path, "integer overflow in " + std::string(what));
  return r;
}

}  // namespace

CompiledExpr::Node CompiledExpr::compile(const Expr& expr, const Schema& schema,
                                         const std::string& path) {
  Node node;
  node.kind = expr.kind();
  node.path = path;
  switch (expr.kind()) {
    case Expr::Kind::ColumnRef: {
      auto index = schema.index_of(expr.column_name());
      if (!index) {
        throw TypeError(path, "unknown column '" + expr.column_name() + "' in " + schema.to_string());
      }
      node.column = *index;
      node.type = schema[*index].type;
      break;
    }
    case Expr::Kind::Const:
      node.constant = expr.constant_value();
      node.type = node.constant.type();
      break;
    case Expr::Kind::Binary: {
      node.op = expr.op();
      node.args.push_back(compile(expr.args()[0], schema, path + ".lhs"));
      node.args.push_back(compile(expr.args()[1], schema, path + ".rhs"));
      node.type = binary_result(node.op, node.args[0].type, node.args[1].type, path);
      break;
    }
    case Expr::Kind::IfElse: {
      node.args.push_back(compile(expr.args()[0], schema, path + ".cond"));
      node.args.push_back(compile(expr.args()[1], schema, path + ".then"));
      node.args.push_back(compile(expr.args()[2], schema, path + ".else"));
      if (node.args[0].type != Type::Bool) {
        throw TypeError(path + ".cond",
                        "condition must be bool, found " + std::string(type_name(node.args[0].type)));
      }
      if (node.args[1].type != node.args[2].type) {
        throw TypeError(path, "if_else branches disagree: " +
                                  std::string(type_name(node.args[1].type)) + " vs " +
                                  std::string(type_name(node.args[2].type)));
      }
      node.type = node.args[1].type;
      break;
    }
    case Expr::Kind::ThisId: node.type = Type::Key; break;
    case Expr::Kind::PointerFrom: {
      if (expr.args().empty()) throw TypeError(path, "pointer_from needs at least one argument");
      for (std::size_t i = 0; i < expr.args().size(); ++i) {
        node.args.push_back(compile(expr.args()[i], schema, path + ".arg" + std::to_string(i)));
      }
      node.type = Type::Key;
      break;
    }
  }
  return node;
}

CompiledExpr::CompiledExpr(const Expr& expr, const Schema& schema)
    : root_(compile(expr, schema, "$")), type_(root_.type) {}

Value CompiledExpr::eval(const Row& row, const Key& key) const { return eval_node(root_, row, key); }

Value CompiledExpr::eval_node(const Node& node, const Row& row, const Key& key) {
  switch (node.kind) {
    case Expr::Kind::ColumnRef: return row[node.column];
    case Expr::Kind::Const: return node.constant;
    case Expr::Kind::Binary: return eval_binary(node, row, key);
    case Expr::Kind::IfElse:
      return eval_node(node.args[0], row, key).as_bool() ? eval_node(node.args[1], row, key)
                                                         : eval_node(node.args[2], row, key);
    case Expr::Kind::ThisId: return key;
    case Expr::Kind::PointerFrom: {
      Row values;
      values.reserve(node.args.size());
      for (const auto& a : node.args) values.push_back(eval_node(a, row, key));
      return hash_key(values);
    }
  }
  return Value();
}

Value CompiledExpr::eval_binary(const Node& node, const Row& row, const Key& key) {
  if (node.op == BinaryOp::And || node.op == BinaryOp::Or) {
    bool lhs = eval_node(node.args[0], row, key).as_bool();
    if (node.op == BinaryOp::And && !lhs) return false;
    if (node.op == BinaryOp::Or && lhs) return true;
    return eval_node(node.args[1], row, key).as_bool();
  }

  Value lhs = eval_node(node.args[0], row, key);
  Value rhs = eval_node(node.args[1], row, key);
  switch (node.op) {
    case BinaryOp::Eq: return lhs == rhs;
    case BinaryOp::Ne: return !(lhs == rhs);
    case BinaryOp::Lt:
    case BinaryOp::Le:
    case BinaryOp::Gt:
    case BinaryOp::Ge: {
      // Numeric comparison for floats (not bit order), lexical for strings.
      std::partial_ordering c = lhs.type() == Type::Float
                                    ? lhs.as_float() <=> rhs.as_float()
                                    : std::partial_ordering(lhs <=> rhs);
      switch (node.op) {
        case BinaryOp::Lt: return c < 0;
        case BinaryOp::Le: return c <= 0;
        case BinaryOp::Gt: return c > 0;
        default: return c >= 0;
      }
    }
    default: break;
  }

  if (lhs.type() == Type::Float) {
    double a = lhs.as_float();
    double b = rhs.as_float();
    switch (node.op) {
      case BinaryOp::Add: return a + b;
      case BinaryOp::Sub: return a - b;
      case BinaryOp::Mul: return a * b;
      case BinaryOp::FloorDiv:
        if (b == 0.0) throw EvalError(key, node.path, "division by zero");
        return std::floor(a / b);
      default: break;
    }
  }

  std::int64_t a = lhs.as_int();
  std::int64_t b = rhs.as_int();
  auto add = [](std::int64_t x, std::int64_t y, std::int64_t* r) { return __builtin_add_overflow(x, y, r); };
  auto sub = [](std::int64_t x, std::int64_t y, std::int64_t* r) { return __builtin_sub_overflow(x, y, r); };
  auto mul = [](std::int64_t x, std::int64_t y, std::int64_t* r) { return __builtin_mul_overflow(x, y, r); };
  switch (node.op) {
    case BinaryOp::Add: return checked(add, a, b, key, node.path, "+");
    case BinaryOp::Sub: return checked(sub, a, b, key, node.path, "-");
    case BinaryOp::Mul: return checked(mul, a, b, key, node.path, "*");
    case BinaryOp::FloorDiv: {
      if (b == 0) throw EvalError(key, node.path, "division by zero");
      if (a == INT64_MIN && b == -1) throw EvalError(key, node.path, "integer overflow in //");
      std::int64_t q = a / b;
      if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
      return q;
    }
    default: break;
  }
  return Value();
}

Type typecheck(const Expr& expr, const Schema& schema) { return CompiledExpr(expr, schema).type(); }

Value eval(const Expr& expr, const Row& row, const Key& key, const Schema& schema) {
  return CompiledExpr(expr, schema).eval(row, key);
}

}  // namespace deltaflow
