#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"
#include "planecount/classes.hpp"
#include "planecount/generate.hpp"
#include "planecount/pathops.hpp"

using namespace planecount;

namespace {

CombinationGraph counted(ClassId cls, const PointSet& ps) {
  CombinationGraph g = build_graph(cls, ps);
  count_paths(g);
  return g;
}

std::vector<Combination> all_of(const CombinationGraph& g, const PointSet& ps) {
  std::vector<Combination> out;
  enumerate(g, ps, [&](const Combination& c) {
    out.push_back(c);
    return true;
  });
  return out;
}

}  // namespace

TEST(Count, ConvexTwelveTriangulations) {
  const PointSet ps = generate_point_set(12, GenMode::Convex, 5, 10000);
  CombinationGraph g = build_graph(ClassId::tr, ps);
  EXPECT_EQ(count_paths(g), 16796);
  EXPECT_EQ(count_paths(static_cast<const CombinationGraph&>(g)), 16796);
}

TEST(Prune, PgKeepsEverything) {
  const CombinationGraph g = counted(ClassId::pg, fixtures::p5i());
  const CombinationGraph p = prune_dead_ends(g);
  EXPECT_EQ(p.node_count(), g.node_count());
  EXPECT_EQ(p.edge_count(), g.edge_count());
}

TEST(Prune, ScQuadrilateralIsOnePath) {
  const CombinationGraph p = prune_dead_ends(counted(ClassId::sc, fixtures::p4c()));
  EXPECT_EQ(p.edge_count(), 4u);
  EXPECT_EQ(p.node_count(), 5u);
  std::size_t paths = 0;
  PathCursor cur(p);
  while (cur.next()) {
    ++paths;
    EXPECT_EQ(cur.labels().size(), 4u);
  }
  EXPECT_EQ(paths, 1u);
}

TEST(Prune, IdempotentAndCountPreserving) {
  const PointSet ps = fixtures::p5i();
  for (ClassId cls : kAllClasses) {
    const CombinationGraph g = counted(cls, ps);
    const CombinationGraph a = prune_dead_ends(g);
    const CombinationGraph b = prune_dead_ends(a);
    EXPECT_EQ(a.nodes, b.nodes);
    EXPECT_EQ(a.edges, b.edges);
    EXPECT_EQ(count_paths(a), g.suffix[0]);
    if (g.suffix[0] == 0) {
      EXPECT_EQ(a.node_count(), 1u);  // the source always survives
      continue;
    }
    for (std::size_t v = 0; v < a.node_count(); ++v) EXPECT_GT(a.suffix[v], 0);
  }
}

TEST(Enumerate, QuadrilateralMatchings) {
  const PointSet ps = fixtures::p4c();
  const auto objs = all_of(counted(ClassId::pm, ps), ps);
  const std::set<Combination> got(objs.begin(), objs.end());
  EXPECT_EQ(got, (std::set<Combination>{{{0, 1}, {2, 3}}, {{0, 3}, {1, 2}}}));
}

TEST(Enumerate, LimitAndEarlyStop) {
  const PointSet ps = fixtures::p5i();
  const CombinationGraph g = counted(ClassId::pg, ps);
  std::size_t seen = 0;
  EXPECT_EQ(enumerate(g, ps, [&](const Combination&) { return ++seen < 3; }), 3u);
  EXPECT_EQ(enumerate(g, ps, [](const Combination&) { return true; }, 7), 7u);
}

TEST(Enumerate, EveryOutputValidAndDistinct) {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const PointSet ps = generate_point_set(6, GenMode::Random, seed, 100);
    for (ClassId cls : kAllClasses) {
      SCOPED_TRACE(class_name(cls));
      const CombinationGraph g = counted(cls, ps);
      const auto objs = all_of(g, ps);
      EXPECT_EQ(BigCount(objs.size()), g.suffix[0]);
      EXPECT_EQ(std::set<Combination>(objs.begin(), objs.end()).size(), objs.size());
      for (const auto& c : objs) {
        const Validation v = validate_output(cls, ps, c);
        EXPECT_TRUE(v.ok) << to_string(v.reason);
      }
    }
  }
}

TEST(Enumerate, SpanningTreesOfQuadrilateral) {
  const PointSet ps = fixtures::p4c();
  const auto objs = all_of(counted(ClassId::st, ps), ps);
  EXPECT_EQ(objs.size(), 12u);
  for (const auto& c : objs) EXPECT_TRUE(validate_output(ClassId::st, ps, c).ok);
}

TEST(Unrank, MatchesEnumerationOrder) {
  const PointSet ps = fixtures::p5i();
  for (ClassId cls : {ClassId::tr, ClassId::st, ClassId::cp}) {
    const CombinationGraph g = counted(cls, ps);
    const auto objs = all_of(g, ps);
    for (std::size_t k = 0; k < objs.size(); ++k) EXPECT_EQ(decode(g, ps, unrank(g, BigCount(k))), objs[k]);
    const CombinationGraph p = prune_dead_ends(g);
    for (std::size_t k = 0; k < objs.size(); ++k) EXPECT_EQ(decode(p, ps, unrank(p, BigCount(k))), objs[k]);
  }
}

TEST(Unrank, OutOfRange) {
  const PointSet ps = fixtures::p4c();
  const CombinationGraph g = counted(ClassId::pm, ps);
  EXPECT_NE(decode(g, ps, unrank(g, 0)), decode(g, ps, unrank(g, 1)));
  EXPECT_THROW(unrank(g, 2), IndexOutOfRange);
  EXPECT_THROW(unrank(g, -1), IndexOutOfRange);
}

TEST(Validate, Reasons) {
  const PointSet ps = fixtures::p4c();
  EXPECT_TRUE(validate_output(ClassId::sc, ps, {{0, 1}, {0, 3}, {1, 2}, {2, 3}}).ok);
  EXPECT_EQ(validate_output(ClassId::pm, ps, {{0, 2}, {1, 3}}).reason, ValidationReason::Crossing);
  EXPECT_EQ(validate_output(ClassId::st, ps, {{0, 1}, {0, 3}, {1, 3}}).reason, ValidationReason::NotSpanningTree);
  EXPECT_EQ(validate_output(ClassId::pm, ps, {{0, 1}}).reason, ValidationReason::NotPerfectMatching);
  EXPECT_EQ(validate_output(ClassId::sc, ps, {{0, 1}, {1, 2}, {2, 3}}).reason, ValidationReason::NotSpanningCycle);
  EXPECT_EQ(validate_output(ClassId::cp, ps, {{0, 2}, {1, 3}}).reason, ValidationReason::HullsIntersect);
  EXPECT_EQ(validate_output(ClassId::cp, ps, {{0, 1}}).reason, ValidationReason::NotPartition);
  EXPECT_TRUE(validate_output(ClassId::tr, ps, {{0, 1, 2}, {0, 2, 3}}).ok);
  EXPECT_EQ(validate_output(ClassId::tr, ps, {{0, 1, 2}}).reason, ValidationReason::NotSubdivision);
  EXPECT_EQ(validate_output(ClassId::pg, ps, {{0, 1}, {0, 1}}).reason, ValidationReason::DuplicateEdge);
}

TEST(ObjectEdges, PartitionUsesHullBoundary) {
  const PointSet ps = fixtures::p5i();
  const auto e = object_edges(ClassId::cp, ps, {{0, 1, 2, 3, 4}});
  EXPECT_EQ(e, (std::vector<std::pair<int, int>>{{0, 1}, {0, 4}, {1, 3}, {3, 4}}));
}
