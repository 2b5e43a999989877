#include <gtest/gtest.h>

#include <vector>

#include "fixtures.hpp"
#include "planecount/geom.hpp"

using namespace planecount;

TEST(Orient, Signs) {
  EXPECT_EQ(orient({0, 0}, {1, 0}, {0, 1}), 1);
  EXPECT_EQ(orient({0, 0}, {1, 1}, {2, 2}), 0);
  EXPECT_EQ(orient({0, 0}, {1, 4}, {2, 5}), -1);
}

TEST(Orient, ExactAtCoordinateBound) {
  const Coord m = kMaxCoord;
  EXPECT_EQ(orient({-m, -m}, {m, m - 1}, {m - 1, m}), 1);
  EXPECT_EQ(orient({-m, -m}, {m, m}, {0, 0}), 0);
}

TEST(Validate, ConvexQuadrilateral) {
  const PointSet ps = fixtures::p4c();
  EXPECT_EQ(ps.n(), 4);
  EXPECT_EQ(ps.top_index(), 2);
  EXPECT_EQ(ps.bottom_index(), 0);
}

TEST(Validate, SortsByXAndKeepsInputOrder) {
  const PointSet ps = validate_point_set({{3, 1}, {0, 0}, {2, 5}, {1, 4}});
  EXPECT_EQ(ps[0].x, 0);
  EXPECT_EQ(ps[3].x, 3);
  EXPECT_EQ(ps.input_order()[0], 1u);
}

TEST(Validate, Errors) {
  using Kind = GeometryError::Kind;
  auto kind_of = [](std::vector<std::pair<Coord, Coord>> pts) {
    try {
      validate_point_set(pts);
    } catch (const GeometryError& e) {
      return e.kind();
    }
    ADD_FAILURE() << "no error";
    return Kind::Empty;
  };
  EXPECT_EQ(kind_of({{0, 0}, {1, 1}, {2, 2}}), Kind::Collinear);
  EXPECT_EQ(kind_of({{0, 0}, {0, 5}}), Kind::DuplicateX);
  EXPECT_EQ(kind_of({}), Kind::Empty);
  EXPECT_EQ(kind_of({{0, 0}, {kMaxCoord + 1, 3}}), Kind::CoordinateOverflow);
  EXPECT_EQ(kind_of({{0, 5}, {1, 0}, {2, 5}}), Kind::NonUniqueExtremeY);
}

TEST(Validate, CollinearReportsInputIndices) {
  try {
    validate_point_set({{2, 2}, {9, 0}, {0, 0}, {1, 1}});
    FAIL();
  } catch (const GeometryError& e) {
    auto idx = e.indices();
    std::sort(idx.begin(), idx.end());
    EXPECT_EQ(idx, (std::vector<std::size_t>{0, 2, 3}));
  }
}

TEST(Validate, SinglePoint) {
  const PointSet ps = validate_point_set({{5, 7}});
  EXPECT_EQ(ps.top_index(), 0);
  EXPECT_EQ(ps.bottom_index(), 0);
  EXPECT_EQ(lower_hull(ps), std::vector<int>{0});
  EXPECT_EQ(upper_hull(ps), std::vector<int>{0});
}

TEST(Above, OpenXRange) {
  const PointSet ps = fixtures::p5i();
  EXPECT_FALSE(strictly_above(ps[2], ps[1], ps[3]));
  EXPECT_TRUE(strictly_below(ps[2], ps[1], ps[3]));
  EXPECT_TRUE(strictly_above(ps[1], ps[0], ps[2]));
  for (int a = 0; a < 5; ++a)
    for (int b = a + 1; b < 5; ++b) EXPECT_FALSE(strictly_above(ps[0], ps[a], ps[b]));
}

TEST(Cross, Diagonals) {
  const PointSet ps = fixtures::p4c();
  EXPECT_TRUE(segments_cross(ps[0], ps[2], ps[1], ps[3]));
  EXPECT_FALSE(segments_cross(ps[0], ps[1], ps[2], ps[3]));
  EXPECT_FALSE(segments_cross(ps[0], ps[1], ps[1], ps[2]));
}

TEST(Hulls, Fixtures) {
  const PointSet a = fixtures::p4c();
  EXPECT_EQ(lower_hull(a), (std::vector<int>{0, 3}));
  EXPECT_EQ(upper_hull(a), (std::vector<int>{0, 1, 2, 3}));
  const PointSet b = fixtures::p5i();
  EXPECT_EQ(lower_hull(b), (std::vector<int>{0, 4}));
  EXPECT_EQ(upper_hull(b), (std::vector<int>{0, 1, 3, 4}));
}

TEST(Shadows, Segments) {
  const PointSet b = fixtures::p5i();
  EXPECT_EQ(lower_shadow(b, std::vector<int>{1, 3}), std::vector<int>{2});
  const PointSet a = fixtures::p4c();
  EXPECT_EQ(upper_shadow(a, std::vector<int>{1, 3}), std::vector<int>{2});
  EXPECT_TRUE(lower_shadow(a, std::vector<int>{2}).empty());
  EXPECT_TRUE(upper_shadow(a, std::vector<int>{2}).empty());
}

TEST(Shadows, SegmentShadowsAvoidTheirEndpoints) {
  const PointSet b = fixtures::p5i();
  for (int p = 0; p < b.n(); ++p)
    for (int q = p + 1; q < b.n(); ++q) {
      const std::vector<std::pair<int, int>> e{{p, q}};
      const PointMask ends = bit(p) | bit(q);
      EXPECT_EQ(lower_shadow_mask(b, e) & ends, 0u);
      EXPECT_EQ(upper_shadow_mask(b, e) & ends, 0u);
      EXPECT_EQ(lower_shadow_mask(b, e) & upper_shadow_mask(b, e), 0u);
    }
}

TEST(Depends, SingletonBelowSegment) {
  const PointSet b = fixtures::p5i();
  const UnitPoints single{{2}, {2}};
  const UnitPoints seg{{1, 3}, {1, 3}};
  EXPECT_TRUE(depends_on(single, seg, b));
}

TEST(Depends, DisjointXRanges) {
  const PointSet a = fixtures::p4c();
  const UnitPoints s01{{0, 1}, {0, 1}}, s23{{2, 3}, {2, 3}}, s12{{1, 2}, {1, 2}};
  EXPECT_FALSE(depends_on(s01, s23, a));
  EXPECT_FALSE(depends_on(s23, s01, a));
  EXPECT_FALSE(depends_on(s01, s12, a));
}

TEST(Depends, CrossingPairsAreMutual) {
  const PointSet a = fixtures::p4c();
  const UnitPoints d02{{0, 2}, {0, 2}}, d13{{1, 3}, {1, 3}};
  EXPECT_TRUE(depends_on(d02, d13, a));
  EXPECT_TRUE(depends_on(d13, d02, a));
}

TEST(Masks, Helpers) {
  EXPECT_EQ(between_mask(1, 4), bit(2) | bit(3));
  EXPECT_EQ(between_mask(2, 3), 0u);
  EXPECT_EQ(mask_to_ids(bit(0) | bit(5)), (std::vector<int>{0, 5}));
  EXPECT_EQ(ids_to_mask(std::vector<int>{1, 63}), bit(1) | bit(63));
  EXPECT_EQ(between_mask(0, 64), ~PointMask{0} & ~bit(0));
}
