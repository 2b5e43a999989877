#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>

#include "fixtures.hpp"
#include "planecount/dagfile.hpp"
#include "planecount/generate.hpp"
#include "planecount/pathops.hpp"

using namespace planecount;

namespace {

CombinationGraph counted(ClassId cls, const PointSet& ps) {
  CombinationGraph g = build_graph(cls, ps);
  count_paths(g);
  return g;
}

}  // namespace

TEST(DagFile, RoundTripIsByteIdentical) {
  const PointSet ps = generate_point_set(7, GenMode::Random, 11, 1000);
  for (ClassId cls : kAllClasses) {
    const CombinationGraph g = counted(cls, ps);
    const auto a = serialize_dag(g);
    const CombinationGraph h = deserialize_dag(a);
    EXPECT_EQ(serialize_dag(h), a) << class_name(cls);
    EXPECT_EQ(h.class_id, cls);
    EXPECT_EQ(h.node_count(), g.node_count());
    EXPECT_EQ(h.edge_count(), g.edge_count());
  }
}

TEST(DagFile, LoadedGraphCountsTheSame) {
  const PointSet ps = fixtures::p5i();
  for (ClassId cls : kAllClasses) {
    CombinationGraph fresh = build_graph(cls, ps);
    // without stored counts; counting happens after loading
    CombinationGraph loaded = deserialize_dag(serialize_dag(fresh));
    EXPECT_FALSE(loaded.has_counts());
    EXPECT_EQ(count_paths(loaded), count_paths(fresh)) << class_name(cls);
  }
}

TEST(DagFile, LoadedGraphUnranksTheSame) {
  const PointSet ps = fixtures::p4c();
  const CombinationGraph g = counted(ClassId::st, ps);
  const CombinationGraph h = deserialize_dag(serialize_dag(g));
  ASSERT_TRUE(h.has_counts());
  for (int k = 0; k < 12; ++k) EXPECT_EQ(decode(h, ps, unrank(h, k)), decode(g, ps, unrank(g, k))) << k;
}

TEST(DagFile, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "planecount_test_roundtrip.dag";
  const CombinationGraph g = counted(ClassId::sc, fixtures::p5i());
  save_dag(g, path.string());
  const CombinationGraph h = load_dag(path.string());
  EXPECT_EQ(count_paths(h), 4);
  std::filesystem::remove(path);
}

TEST(DagFile, TruncationIsAFormatError) {
  const auto bytes = serialize_dag(counted(ClassId::cp, fixtures::p4c()));
  for (std::size_t len = 0; len < bytes.size(); ++len) {
    const std::vector<std::uint8_t> cut(bytes.begin(), bytes.begin() + static_cast<std::ptrdiff_t>(len));
    EXPECT_THROW(deserialize_dag(cut), FormatError) << len;
  }
}

TEST(DagFile, BadHeaderFields) {
  const auto good = serialize_dag(counted(ClassId::pm, fixtures::p4c()));
  auto bad = good;
  bad[0] = 'X';
  EXPECT_THROW(deserialize_dag(bad), FormatError);
  bad = good;
  bad[4] = 99;  // version
  EXPECT_THROW(deserialize_dag(bad), FormatError);
  bad = good;
  bad[6] = 0;  // class id
  EXPECT_THROW(deserialize_dag(bad), FormatError);
  bad = good;
  bad[9] = 7;  // palette
  EXPECT_THROW(deserialize_dag(bad), FormatError);
  bad = good;
  bad.push_back(0);
  EXPECT_THROW(deserialize_dag(bad), FormatError);
}

TEST(DagFile, ErrorCarriesOffset) {
  auto bytes = serialize_dag(counted(ClassId::pm, fixtures::p4c()));
  bytes.push_back(0);
  try {
    deserialize_dag(bytes);
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_EQ(e.offset(), bytes.size() - 1);
  }
}

TEST(DagFile, MissingFile) { EXPECT_THROW(load_dag("/nonexistent/planecount.dag"), Error); }
