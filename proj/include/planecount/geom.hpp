#pragma once

// Exact integer predicates on x-sorted point sets in general position.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "planecount/error.hpp"

namespace planecount {

using Coord = std::int64_t;
using Wide = __int128;

/// Largest absolute coordinate accepted; keeps every orientation determinant
/// inside 128-bit signed range.
inline constexpr Coord kMaxCoord = Coord{1} << 40;

/// Combinatorial machinery indexes points with 64-bit masks.
inline constexpr int kMaxPoints = 64;
using PointMask = std::uint64_t;

constexpr PointMask bit(int i) noexcept { return PointMask{1} << i; }
constexpr int popcount(PointMask m) noexcept { return std::popcount(m); }
constexpr int lowest(PointMask m) noexcept { return std::countr_zero(m); }
constexpr int highest(PointMask m) noexcept { return 63 - std::countl_zero(m); }

/// Ids strictly between a and b in x-order.
constexpr PointMask between_mask(int a, int b) noexcept {
  if (b <= a + 1) return 0;
  const PointMask upto_b = (b >= 64) ? ~PointMask{0} : (bit(b) - 1);
  return upto_b & ~((bit(a) << 1) - 1);
}

inline std::vector<int> mask_to_ids(PointMask m) {
  std::vector<int> ids;
  ids.reserve(popcount(m));
  for (; m != 0; m &= m - 1) ids.push_back(lowest(m));
  return ids;
}

inline PointMask ids_to_mask(std::span<const int> ids) {
  PointMask m = 0;
  for (int id : ids) m |= bit(id);
  return m;
}

struct Point {
  Coord x = 0;
  Coord y = 0;
  int id = 0;  ///< index in x-sorted order

  friend bool operator==(const Point&, const Point&) = default;
};

/// Sign of (b - a) x (c - a): +1 left turn, -1 right turn, 0 collinear.
inline int orient(const Point& a, const Point& b, const Point& c) noexcept {
  const Wide det = Wide(b.x - a.x) * Wide(c.y - a.y) - Wide(b.y - a.y) * Wide(c.x - a.x);
  return (det > 0) - (det < 0);
}

/// Twice the signed area of triangle abc.
inline Wide doubled_area(const Point& a, const Point& b, const Point& c) noexcept {
  return Wide(b.x - a.x) * Wide(c.y - a.y) - Wide(b.y - a.y) * Wide(c.x - a.x);
}

/// The universe P: points sorted strictly by x, ids equal to positions.
class PointSet {
 public:
  PointSet() = default;

  std::size_t size() const noexcept { return points_.size(); }
  int n() const noexcept { return static_cast<int>(points_.size()); }
  const Point& operator[](int id) const noexcept { return points_[static_cast<std::size_t>(id)]; }
  std::span<const Point> points() const noexcept { return points_; }
  auto begin() const noexcept { return points_.begin(); }
  auto end() const noexcept { return points_.end(); }

  int top_index() const noexcept { return top_; }
  int bottom_index() const noexcept { return bottom_; }

  /// Original input position of each sorted point.
  std::span<const std::size_t> input_order() const noexcept { return input_order_; }

  PointMask all_mask() const noexcept {
    return n() >= 64 ? ~PointMask{0} : bit(n()) - 1;
  }

  friend PointSet validate_point_set(std::span<const std::pair<Coord, Coord>> raw);

 private:
  std::vector<Point> points_;
  std::vector<std::size_t> input_order_;
  int top_ = 0;
  int bottom_ = 0;
};

/// Sorts by x, assigns ids, and checks every PointSet invariant.
inline PointSet validate_point_set(std::span<const std::pair<Coord, Coord>> raw) {
  using Kind = GeometryError::Kind;
  if (raw.empty()) throw GeometryError(Kind::Empty, {}, "point set is empty");
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const auto [x, y] = raw[i];
    if (x > kMaxCoord || x < -kMaxCoord || y > kMaxCoord || y < -kMaxCoord)
      throw GeometryError(Kind::CoordinateOverflow, {i},
                          "coordinate of point " + std::to_string(i) + " exceeds 2^40");
  }

  std::vector<std::size_t> order(raw.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return raw[a].first < raw[b].first; });

  PointSet ps;
  ps.input_order_ = order;
  ps.points_.reserve(raw.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (k > 0 && raw[order[k]].first == raw[order[k - 1]].first)
      throw GeometryError(Kind::DuplicateX, {order[k - 1], order[k]},
                          "points " + std::to_string(order[k - 1]) + " and " +
                              std::to_string(order[k]) + " share an x-coordinate");
    ps.points_.push_back({raw[order[k]].first, raw[order[k]].second, static_cast<int>(k)});
  }

  const auto& pts = ps.points_;
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        if (orient(pts[i], pts[j], pts[k]) == 0)
          throw GeometryError(Kind::Collinear, {order[i], order[j], order[k]},
                              "points " + std::to_string(order[i]) + ", " +
                                  std::to_string(order[j]) + ", " + std::to_string(order[k]) +
                                  " are collinear");

  int top = 0, bottom = 0;
  for (int i = 1; i < static_cast<int>(n); ++i) {
    if (pts[i].y > pts[top].y) top = i;
    if (pts[i].y < pts[bottom].y) bottom = i;
  }
  for (int i = 0; i < static_cast<int>(n); ++i) {
    if ((i != top && pts[i].y == pts[top].y) || (i != bottom && pts[i].y == pts[bottom].y)) {
      const int other = pts[i].y == pts[top].y ? top : bottom;
      throw GeometryError(Kind::NonUniqueExtremeY, {order[other], order[i]},
                          "extreme y-coordinate is not unique");
    }
  }
  ps.top_ = top;
  ps.bottom_ = bottom;
  return ps;
}

inline PointSet validate_point_set(std::initializer_list<std::pair<Coord, Coord>> raw) {
  const std::vector<std::pair<Coord, Coord>> v(raw);
  return validate_point_set(std::span<const std::pair<Coord, Coord>>(v));
}

/// True iff x(a) < x(p) < x(b) and p lies strictly above segment ab.
inline bool strictly_above(const Point& p, const Point& a, const Point& b) noexcept {
  return a.x < p.x && p.x < b.x && orient(a, b, p) > 0;
}

inline bool strictly_below(const Point& p, const Point& a, const Point& b) noexcept {
  return a.x < p.x && p.x < b.x && orient(a, b, p) < 0;
}

/// Open segments ab and cd intersect in their relative interiors.
inline bool segments_cross(const Point& a, const Point& b, const Point& c, const Point& d) noexcept {
  return orient(a, b, c) * orient(a, b, d) < 0 && orient(c, d, a) * orient(c, d, b) < 0;
}

/// Boundary edges of the convex polygon on hull vertices given in x-order
/// (one vertex: none; two: the segment). Each edge is (left, right).
inline std::vector<std::pair<int, int>> hull_edges(const PointSet& ps, std::span<const int> hull);

/// Lower chain of a vertex set sorted by id (x-order), inclusive endpoints.
inline std::vector<int> lower_chain(const PointSet& ps, std::span<const int> sorted_ids) {
  std::vector<int> chain;
  for (int id : sorted_ids) {
    while (chain.size() >= 2 &&
           orient(ps[chain[chain.size() - 2]], ps[chain.back()], ps[id]) <= 0)
      chain.pop_back();
    chain.push_back(id);
  }
  return chain;
}

inline std::vector<int> upper_chain(const PointSet& ps, std::span<const int> sorted_ids) {
  std::vector<int> chain;
  for (int id : sorted_ids) {
    while (chain.size() >= 2 &&
           orient(ps[chain[chain.size() - 2]], ps[chain.back()], ps[id]) >= 0)
      chain.pop_back();
    chain.push_back(id);
  }
  return chain;
}

inline std::vector<int> all_ids(const PointSet& ps) {
  std::vector<int> ids(ps.size());
  std::iota(ids.begin(), ids.end(), 0);
  return ids;
}

inline std::vector<int> lower_hull(const PointSet& ps) { return lower_chain(ps, all_ids(ps)); }
inline std::vector<int> upper_hull(const PointSet& ps) { return upper_chain(ps, all_ids(ps)); }

inline std::vector<std::pair<int, int>> hull_edges(const PointSet& ps, std::span<const int> hull) {
  std::vector<std::pair<int, int>> edges;
  if (hull.size() < 2) return edges;
  if (hull.size() == 2) {
    edges.emplace_back(hull[0], hull[1]);
    return edges;
  }
  const auto lo = lower_chain(ps, hull);
  const auto up = upper_chain(ps, hull);
  for (std::size_t i = 0; i + 1 < lo.size(); ++i) edges.emplace_back(lo[i], lo[i + 1]);
  for (std::size_t i = 0; i + 1 < up.size(); ++i) edges.emplace_back(up[i], up[i + 1]);
  return edges;
}

/// Points whose upward vertical ray meets the relative interior of an edge.
inline PointMask lower_shadow_mask(const PointSet& ps, std::span<const std::pair<int, int>> edges) {
  PointMask m = 0;
  for (auto [a, b] : edges)
    for (int r = a + 1; r < b; ++r)
      if (orient(ps[a], ps[b], ps[r]) < 0) m |= bit(r);
  return m;
}

inline PointMask upper_shadow_mask(const PointSet& ps, std::span<const std::pair<int, int>> edges) {
  PointMask m = 0;
  for (auto [a, b] : edges)
    for (int r = a + 1; r < b; ++r)
      if (orient(ps[a], ps[b], ps[r]) > 0) m |= bit(r);
  return m;
}

/// Lower shadow of the unit whose hull vertices (x-order) are given.
inline std::vector<int> lower_shadow(const PointSet& ps, std::span<const int> hull) {
  const auto e = hull_edges(ps, hull);
  return mask_to_ids(lower_shadow_mask(ps, e));
}

inline std::vector<int> upper_shadow(const PointSet& ps, std::span<const int> hull) {
  const auto e = hull_edges(ps, hull);
  return mask_to_ids(upper_shadow_mask(ps, e));
}

/// Point strictly inside the convex polygon with the given hull vertices.
inline bool strictly_inside_hull(const PointSet& ps, std::span<const int> hull, int r) {
  if (hull.size() < 3) return false;
  const auto lo = lower_chain(ps, hull);
  const auto up = upper_chain(ps, hull);
  if (!(ps[hull.front()].x < ps[r].x && ps[r].x < ps[hull.back()].x)) return false;
  bool above_lower = false, below_upper = false;
  for (std::size_t i = 0; i + 1 < lo.size(); ++i)
    if (ps[lo[i]].x < ps[r].x && ps[r].x < ps[lo[i + 1]].x)
      above_lower = orient(ps[lo[i]], ps[lo[i + 1]], ps[r]) > 0;
  for (std::size_t i = 0; i + 1 < up.size(); ++i)
    if (ps[up[i]].x < ps[r].x && ps[r].x < ps[up[i + 1]].x)
      below_upper = orient(ps[up[i]], ps[up[i + 1]], ps[r]) < 0;
  return above_lower && below_upper;
}

/// Vertex sets of two units plus their full point sets (hull and interior).
struct UnitPoints {
  std::vector<int> hull;    ///< hull vertices in x-order
  std::vector<int> points;  ///< hull plus interior, sorted
};

/// u2 depends on u1: upts(u1) meets ulow(u2), or uupp(u1) meets upts(u2).
inline bool depends_on(const UnitPoints& u1, const UnitPoints& u2, const PointSet& ps) {
  const auto e1 = hull_edges(ps, u1.hull);
  const auto e2 = hull_edges(ps, u2.hull);
  const PointMask pts1 = ids_to_mask(u1.points);
  const PointMask pts2 = ids_to_mask(u2.points);
  return (pts1 & lower_shadow_mask(ps, e2)) != 0 || (upper_shadow_mask(ps, e1) & pts2) != 0;
}

}  // namespace planecount
