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

#include <gtest/gtest.h>

#include "deltaflow/bench/pipelines.hpp"
#include "deltaflow/core/errors.hpp"
#include "deltaflow/graph/table.hpp"
#include "deltaflow/graph/universe.hpp"

namespace deltaflow {
namespace {

using bench::pagerank_graph;
using bench::wordcount_graph;

TEST(UniverseRelations, SubsetIsTransitive) {
  UniverseRelations r;
  auto a = r.fresh(), b = r.fresh(), c = r.fresh();
  r.declare_subset(a, b);
  r.declare_subset(b, c);
  EXPECT_TRUE(r.is_subset(a, c));
  EXPECT_FALSE(r.is_subset(c, a));
  EXPECT_EQ(r.relation(a, c), Relation::Subset);
  EXPECT_EQ(r.relation(c, a), Relation::Superset);
  EXPECT_EQ(r.relation(a, a), Relation::Equal);
}

TEST(UniverseRelations, DisjointnessIsInheritedBySubsets) {
  UniverseRelations r;
  auto a = r.fresh(), b = r.fresh(), sub = r.fresh();
  r.declare_disjoint(a, b);
  r.declare_subset(sub, a);
  EXPECT_TRUE(r.is_disjoint(sub, b));
  EXPECT_TRUE(r.is_disjoint(b, sub));
  EXPECT_EQ(r.relation(a, sub), Relation::Superset);
  auto other = r.fresh();
  EXPECT_EQ(r.relation(a, other), Relation::Unknown);
}

TEST(UniverseRelations, InternReturnsSameUniverse) {
  UniverseRelations r;
  auto x = r.intern("groupby:v");
  EXPECT_EQ(r.intern("groupby:v"), x);
  EXPECT_NE(r.intern("groupby:u"), x);
}

class TableTest : public ::testing::Test {
 protected:
  Pipeline p;
  Table edges = p.source("edges", {{"u", Type::String}, {"v", Type::String}}, {"u", "v"});
};

TEST_F(TableTest, SelectKeepsUniverse) {
  auto t = edges.select({{"x", col("u")}});
  EXPECT_EQ(t.universe(), edges.universe());
  EXPECT_EQ(t.schema().size(), 1u);
}

TEST_F(TableTest, FilterYieldsSubset) {
  auto t = edges.filter(col("u") == col("v"));
  t.sink(SinkSpec::null());
  auto g = p.build();
  EXPECT_TRUE(g.universes().is_subset(t.universe(), edges.universe()));
  EXPECT_THROW(edges.filter(col("u")), TypeError);
}

TEST_F(TableTest, SourceValidation) {
  EXPECT_THROW(p.source("bad", {{"w", Type::String}}, {"w", "w"}), TypeError);
  EXPECT_THROW(p.source("bad", {{"w", Type::String}}, {"x"}), TypeError);
  EXPECT_THROW(p.source("edges", {{"w", Type::String}}, {}), BuildError);
}

TEST_F(TableTest, DifferenceIsDisjointFromOther) {
  auto out = edges.groupby_reduce({{"", col("u")}}, {{"degree", count()}});
  auto in = edges.groupby_reduce({{"", col("v")}}, {{"degree", count()}});
  auto base = out.difference(in);
  base.sink(SinkSpec::null());
  auto g = p.build();
  EXPECT_TRUE(g.universes().is_subset(base.universe(), out.universe()));
  EXPECT_TRUE(g.universes().is_disjoint(base.universe(), in.universe()));
  EXPECT_EQ(base.schema().columns(), out.schema().columns());
}

TEST_F(TableTest, IdenticalGroupingsShareUniverse) {
  auto a = edges.groupby_reduce({{"", col("v")}}, {{"degree", count()}});
  auto b = edges.groupby_reduce({{"", col("v")}}, {{"total", count()}});
  auto c = edges.groupby_reduce({{"", col("u")}}, {{"degree", count()}});
  EXPECT_EQ(a.universe(), b.universe());
  EXPECT_NE(a.universe(), c.universe());
}

TEST_F(TableTest, GroupbyValidation) {
  EXPECT_THROW(edges.groupby_reduce({}, {{"c", count()}}), TypeError);
  EXPECT_THROW(edges.groupby_reduce({{"", col("u")}}, {{"s", int_sum(col("v"))}}), TypeError);
  EXPECT_THROW(edges.groupby_reduce({{"", col("u")}}, {{"s", Reducer{Reducer::Kind::IntSum, std::nullopt}}}),
               TypeError);
  auto named = edges.groupby_reduce({{"u", col("u")}}, {{"n", count()}});
  ASSERT_EQ(named.schema().size(), 2u);
  EXPECT_EQ(named.schema()[0].name, "u");
  EXPECT_EQ(named.schema()[1].type, Type::Int);
}

TEST_F(TableTest, IxRequiresKeyExpression) {
  auto out = edges.groupby_reduce({{"", col("u")}}, {{"degree", count()}});
  EXPECT_THROW(edges.ix(col("u"), out, {"degree"}), TypeError);
  EXPECT_THROW(edges.ix(pointer_from({col("u")}), out, {"missing"}), TypeError);
  auto joined = edges.ix(pointer_from({col("u")}), out, {"degree"});
  EXPECT_EQ(joined.universe(), edges.universe());
  EXPECT_EQ(joined.schema().size(), 3u);
  EXPECT_THROW(joined.ix(pointer_from({col("u")}), out, {"degree"}), TypeError);
}

TEST_F(TableTest, SetOpsRequireMatchingSchemas) {
  auto a = edges.groupby_reduce({{"", col("u")}}, {{"x", count()}});
  auto b = edges.groupby_reduce({{"", col("v")}}, {{"y", count()}});
  EXPECT_THROW(Table::update_rows(a, b), TypeError);
  EXPECT_THROW(Table::concat(a, b), TypeError);
  // difference compares keys only.
  EXPECT_NO_THROW(a.difference(b));
}

TEST_F(TableTest, MixingPipelinesIsRejected) {
  Pipeline other;
  auto t = other.source("edges", {{"u", Type::String}, {"v", Type::String}}, {"u", "v"});
  EXPECT_THROW(edges.difference(t), BuildError);
}

TEST_F(TableTest, BuildRequiresSink) { EXPECT_THROW(p.build(), BuildError); }

TEST_F(TableTest, BuildRejectsBadSinks) {
  edges.sink(SinkSpec::collect("out"));
  EXPECT_THROW(edges.sink(SinkSpec::collect("out")), BuildError);
  EXPECT_THROW(edges.sink(SinkSpec::jsonl("")), BuildError);
}

TEST_F(TableTest, BuildDropsNodesThatFeedNoSink) {
  edges.select({{"x", col("u")}});
  edges.filter(col("u") == col("v")).sink(SinkSpec::collect("out"));
  auto g = p.build();
  EXPECT_EQ(g.count(OpKind::Select), 0u);
  EXPECT_EQ(g.count(OpKind::Filter), 1u);
  EXPECT_EQ(g.sources().size(), 1u);
  ASSERT_TRUE(g.sink_by_name("out"));
  EXPECT_EQ(g.node(*g.sink_by_name("out")).kind, OpKind::Sink);
}

TEST(GraphBuild, NodesAreTopologicallyOrdered) {
  auto g = pagerank_graph(5, SinkSpec::null("ranks"));
  for (const auto& n : g.nodes()) {
    for (NodeId in : n.inputs) EXPECT_LT(in, n.id) << n.label();
  }
}

TEST(GraphBuild, WordcountShape) {
  auto g = wordcount_graph(SinkSpec::null("counts"));
  EXPECT_EQ(g.nodes().size(), 3u);
  EXPECT_EQ(g.count(OpKind::Source), 1u);
  EXPECT_EQ(g.count(OpKind::GroupByReduce), 1u);
  EXPECT_EQ(g.count(OpKind::Sink), 1u);
}

TEST(GraphBuild, PagerankUnrollsEverySteps) {
  auto g1 = pagerank_graph(1, SinkSpec::null("ranks"));
  auto g5 = pagerank_graph(5, SinkSpec::null("ranks"));
  const std::size_t per_step_ix = g1.count(OpKind::IxJoin);
  EXPECT_EQ(per_step_ix, 2u);
  EXPECT_EQ(g5.count(OpKind::IxJoin), 5 * per_step_ix);
  EXPECT_EQ(g5.count(OpKind::Concat), 5u);
  EXPECT_EQ(g5.count(OpKind::GroupByReduce) - g1.count(OpKind::GroupByReduce), 4u);
}

TEST(GraphBuild, SameCodeYieldsIsomorphicGraphs) {
  EXPECT_EQ(pagerank_graph(3, SinkSpec::null("ranks")).describe(),
            pagerank_graph(3, SinkSpec::null("ranks")).describe());
  EXPECT_NE(pagerank_graph(3, SinkSpec::null("ranks")).describe(),
            pagerank_graph(4, SinkSpec::null("ranks")).describe());
}

}  // namespace
}  // namespace deltaflow
