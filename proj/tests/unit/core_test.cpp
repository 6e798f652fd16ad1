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

#include <array>
#include <cmath>
#include <random>
#include <limits>
#include <stdexcept>

#include <gtest/gtest.h>

#include "deltaflow/core/errors.hpp"
#include "deltaflow/core/expr.hpp"
#include "deltaflow/core/key.hpp"
#include "deltaflow/core/schema.hpp"
#include "deltaflow/core/update.hpp"
#include "deltaflow/core/value.hpp"

namespace deltaflow {
namespace {

TEST(Value, OrdersByTypeTagFirst) {
  EXPECT_LT(Value(std::int64_t{100}), Value(-1.0));
  EXPECT_LT(Value(2.5), Value("a"));
  EXPECT_LT(Value("zzz"), Value(false));
  EXPECT_LT(Value(true), Value(Key{0, 0}));
  EXPECT_LT(Value(Key{~0ULL, ~0ULL}), Value(None{}));
}

TEST(Value, FloatsCompareByBitPattern) {
  Value pos_zero(0.0);
  Value neg_zero(-0.0);
  EXPECT_NE(pos_zero, neg_zero);
  Value nan(std::numeric_limits<double>::quiet_NaN());
  EXPECT_EQ(nan, nan);
}

TEST(Value, ToStringQuotesStrings) {
  EXPECT_EQ(Value("ab").to_string(), "\"ab\"");
  EXPECT_EQ(Value(std::int64_t{-3}).to_string(), "-3");
  EXPECT_EQ(Value(true).to_string(), "true");
}

TEST(Key, HexRoundTrip) {
  Key k{0x0123456789abcdefULL, 0xfedcba9876543210ULL};
  EXPECT_EQ(k.hex(), "0123456789abcdeffedcba9876543210");
  EXPECT_EQ(Key::from_hex(k.hex()), k);
  EXPECT_THROW(Key::from_hex("123"), std::invalid_argument);
  EXPECT_THROW(Key::from_hex(std::string(32, 'g')), std::invalid_argument);
}

TEST(HashKey, DeterministicAndTypeSensitive) {
  EXPECT_EQ(hash_key({Value("a")}), hash_key({Value("a")}));
  EXPECT_NE(hash_key({Value("a")}), hash_key({Value("b")}));
  EXPECT_NE(hash_key({Value(std::int64_t{1})}), hash_key({Value(1.0)}));
  EXPECT_NE(hash_key({Value(std::int64_t{1})}), hash_key({Value(true)}));
  // Length-prefixed strings: ("ab","c") and ("a","bc") must differ.
  EXPECT_NE(hash_key({Value("ab"), Value("c")}), hash_key({Value("a"), Value("bc")}));
  EXPECT_THROW(hash_key(std::span<const Value>{}), std::invalid_argument);
}

TEST(HashKey, StableAcrossRuns) {
  // Pinned so key assignment cannot drift between builds.
  EXPECT_EQ(hash_key({Value("u")}).hex(), "227c9ed0609d7e80a2fc2b00438adc21");
}

TEST(WorkerOf, UsesHighBitsModuloWorkers) {
  Key k{10, 3};
  EXPECT_EQ(worker_of(k, 1), 0u);
  EXPECT_EQ(worker_of(k, 4), 2u);
  EXPECT_EQ(worker_of(k, 3), 1u);
}

Update up(std::uint64_t key, std::int64_t v, Diff d, Epoch e = 0) {
  return Update{Key{key, 0}, {Value(v)}, d, e};
}

TEST(Consolidate, SumsCancelsAndSorts) {
  auto out = consolidate({up(2, 1, 1), up(1, 5, 1), up(2, 1, -1), up(1, 5, 2), up(1, 4, 1, 1)});
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0], up(1, 5, 3));
  EXPECT_EQ(out[1], up(1, 4, 1, 1));
}

TEST(Consolidate, EmptyStaysEmpty) { EXPECT_TRUE(consolidate({}).empty()); }

TEST(WorkerOf, SpreadsRandomKeysAcrossFourWorkers) {
  std::array<int, 4> counts{};
  for (std::int64_t i = 0; i < 10000; ++i) ++counts[worker_of(hash_key({Value(i)}), 4)];
  for (int c : counts) {
    EXPECT_GE(c, 1500);
    EXPECT_LE(c, 3500);
  }
}

TEST(HashKey, ChiSquaredOverEightBuckets) {
  constexpr int kKeys = 100000;
  std::array<double, 8> counts{};
  for (std::int64_t i = 0; i < kKeys; ++i) ++counts[worker_of(hash_key({Value(i)}), 8)];
  double chi2 = 0;
  for (double c : counts) chi2 += (c - kKeys / 8.0) * (c - kKeys / 8.0) / (kKeys / 8.0);
  // Upper 0.001 quantile of chi-squared with 7 degrees of freedom.
  EXPECT_LT(chi2, 24.322);
}

TEST(Consolidate, EpochsNeverMerge) {
  auto out = consolidate({up(1, 1, 1, 0), up(1, 1, -1, 1)});
  EXPECT_EQ(out.size(), 2u);
}

TEST(Consolidate, IdempotentAndAssociative) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Update> x, y;
    for (int i = 0; i < 40; ++i) {
      auto u = up(rng() % 5, static_cast<std::int64_t>(rng() % 3), static_cast<Diff>(rng() % 5) - 2, rng() % 2);
      (i % 2 ? x : y).push_back(u);
    }
    auto cx = consolidate(x);
    EXPECT_EQ(consolidate(cx), cx);
    auto xy = x;
    xy.insert(xy.end(), y.begin(), y.end());
    auto cy = consolidate(y);
    auto parts = cx;
    parts.insert(parts.end(), cy.begin(), cy.end());
    EXPECT_EQ(consolidate(xy), consolidate(parts));
  }
}

TEST(Schema, RejectsDuplicateColumns) {
  EXPECT_THROW(Schema({{"a", Type::Int}, {"a", Type::String}}), TypeError);
  Schema s({{"a", Type::Int}, {"b", Type::String}});
  EXPECT_EQ(s.index_of("b"), 1u);
  EXPECT_FALSE(s.index_of("c"));
  EXPECT_THROW(s.require("c"), TypeError);
}

class ExprTest : public ::testing::Test {
 protected:
  Schema schema{{{"i", Type::Int}, {"j", Type::Int}, {"f", Type::Float}, {"s", Type::String}, {"b", Type::Bool}}};
  Key key{7, 7};

  Value run(const Expr& e, std::int64_t i, std::int64_t j = 1) {
    Row row{Value(i), Value(j), Value(1.5), Value("x"), Value(true)};
    return CompiledExpr(e, schema).eval(row, key);
  }
};

TEST_F(ExprTest, FloorDivisionRoundsTowardNegativeInfinity) {
  EXPECT_EQ(run(floordiv(col("i"), col("j")), 7, 2), Value(std::int64_t{3}));
  EXPECT_EQ(run(floordiv(col("i"), col("j")), -7, 2), Value(std::int64_t{-4}));
  EXPECT_EQ(run(floordiv(col("i"), col("j")), 7, -2), Value(std::int64_t{-4}));
  EXPECT_EQ(run(floordiv(col("i"), col("j")), -7, -2), Value(std::int64_t{3}));
  EXPECT_EQ(run(floordiv(col("i"), col("j")), -6, 2), Value(std::int64_t{-3}));
}

TEST_F(ExprTest, OutflowRecurrenceExample) {
  Schema s({{"degree", Type::Int}, {"rank", Type::Int}});
  auto outflow = if_else(col("degree") == 0, lit(0), floordiv(col("rank") * 5, col("degree") * 6));
  CompiledExpr c(outflow, s);
  EXPECT_EQ(c.eval({Value(std::int64_t{1}), Value(std::int64_t{6000})}, key), Value(std::int64_t{5000}));
  EXPECT_EQ(c.eval({Value(std::int64_t{0}), Value(std::int64_t{6000})}, key), Value(std::int64_t{0}));
  EXPECT_EQ(c.eval({Value(std::int64_t{3}), Value(std::int64_t{1000})}, key), Value(std::int64_t{277}));
}

TEST_F(ExprTest, DivisionByZeroCarriesKeyAndPath) {
  try {
    run(col("i") + floordiv(col("i"), col("j")), 1, 0);
    FAIL() << "expected EvalError";
  } catch (const EvalError& e) {
    EXPECT_EQ(e.key(), key);
    EXPECT_EQ(e.path(), "$.rhs");
    EXPECT_EQ(e.reason(), "division by zero");
  }
}

TEST_F(ExprTest, OverflowIsAnError) {
  const auto max = std::numeric_limits<std::int64_t>::max();
  EXPECT_THROW(run(col("i") + 1, max), EvalError);
  EXPECT_THROW(run(col("i") * 2, max), EvalError);
  EXPECT_THROW(run(col("i") - 2, std::numeric_limits<std::int64_t>::min()), EvalError);
  EXPECT_THROW(run(floordiv(col("i"), col("j")), std::numeric_limits<std::int64_t>::min(), -1), EvalError);
}

TEST_F(ExprTest, IfElseIsLazy) {
  EXPECT_EQ(run(if_else(col("j") == 0, lit(-1), floordiv(col("i"), col("j"))), 5, 0), Value(std::int64_t{-1}));
}

TEST_F(ExprTest, LogicShortCircuits) {
  auto guarded = (col("j") != 0) && (floordiv(col("i"), col("j")) > 1);
  EXPECT_EQ(run(guarded, 5, 0), Value(false));
  EXPECT_EQ(run(guarded, 5, 2), Value(true));
}

TEST_F(ExprTest, TypeErrorsNameThePath) {
  try {
    CompiledExpr(col("i") + (col("f") * 2), schema);
    FAIL() << "expected TypeError";
  } catch (const TypeError& e) {
    EXPECT_EQ(e.path(), "$.rhs");
  }
  EXPECT_THROW(CompiledExpr(col("i") + col("f"), schema), TypeError);
  EXPECT_THROW(CompiledExpr(col("s") < col("b"), schema), TypeError);
  EXPECT_THROW(CompiledExpr(col("b") < col("b"), schema), TypeError);
  EXPECT_THROW(CompiledExpr(if_else(col("i"), lit(1), lit(2)), schema), TypeError);
  EXPECT_THROW(CompiledExpr(if_else(col("b"), lit(1), lit("x")), schema), TypeError);
  EXPECT_THROW(CompiledExpr(col("missing"), schema), TypeError);
  EXPECT_EQ(CompiledExpr(col("s") < lit("y"), schema).type(), Type::Bool);
}

TEST_F(ExprTest, Arithmetic) {
  EXPECT_EQ(run(col("i") + col("j") * 2, 1, 3), Value(std::int64_t{7}));
  EXPECT_EQ(run(if_else(col("i") == 0, lit(0), lit(1)), 0), Value(std::int64_t{0}));
  EXPECT_EQ(CompiledExpr(if_else(col("i") == 0, lit(0), floordiv(col("j"), col("i"))), schema).type(), Type::Int);
  EXPECT_EQ(CompiledExpr(col("s"), schema).type(), Type::String);
}

TEST_F(ExprTest, MismatchMessageNamesBothTypes) {
  try {
    CompiledExpr(lit(1) + lit("a"), schema);
    FAIL() << "expected TypeError";
  } catch (const TypeError& e) {
    EXPECT_NE(e.message().find("int + string"), std::string::npos) << e.message();
  }
}

TEST_F(ExprTest, IdsAndPointers) {
  EXPECT_EQ(run(this_id(), 0), Value(key));
  EXPECT_EQ(run(pointer_from({col("s")}), 0), Value(hash_key({Value("x")})));
  EXPECT_EQ(CompiledExpr(pointer_from({col("s"), col("i")}), schema).type(), Type::Key);
}

TEST(Expr, StructuralEquality) {
  EXPECT_TRUE(structurally_equal(col("a") + 1, col("a") + 1));
  EXPECT_FALSE(structurally_equal(col("a") + 1, col("a") + 2));
  EXPECT_FALSE(structurally_equal(col("a") + 1, col("b") + 1));
  EXPECT_EQ((col("a") * 5).to_string(), "(a * 5)");
}

}  // namespace
}  // namespace deltaflow
