#pragma once

// Unit families: segments, empty triangles, empty convex faces, convex parts,
// and the decorated segments used by the tree and cycle classes.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "planecount/geom.hpp"

namespace planecount {

enum class UnitKind : std::uint8_t {
  Segment = 0,
  Triangle = 1,
  ConvexFace = 2,
  ConvexPart = 3,
  TreeSegment = 4,
  CycleSegment = 5,
};

/// Direction of the vertical border hanging below a newly used endpoint.
enum class Border : std::uint8_t { None = 0, LtoR = 1, RtoL = 2 };

struct UnitLabel {
  UnitKind kind = UnitKind::Segment;
  std::vector<int> ids;  ///< hull vertices sorted by x (segments: left, right)
  int tail = -1;         ///< TreeSegment only
  Border border_left = Border::None;
  Border border_right = Border::None;

  int leftmost() const noexcept { return ids.front(); }
  int rightmost() const noexcept { return ids.back(); }

  friend bool operator==(const UnitLabel&, const UnitLabel&) = default;

  /// Lexicographic by (leftmost, rightmost, remaining ids, tail, borders).
  friend std::strong_ordering operator<=>(const UnitLabel& a, const UnitLabel& b) {
    if (auto c = a.kind <=> b.kind; c != 0) return c;
    if (auto c = a.leftmost() <=> b.leftmost(); c != 0) return c;
    if (auto c = a.rightmost() <=> b.rightmost(); c != 0) return c;
    if (auto c = std::lexicographical_compare_three_way(a.ids.begin(), a.ids.end(),
                                                        b.ids.begin(), b.ids.end());
        c != 0)
      return c;
    if (auto c = a.tail <=> b.tail; c != 0) return c;
    if (auto c = a.border_left <=> b.border_left; c != 0) return c;
    return a.border_right <=> b.border_right;
  }
};

inline UnitLabel make_segment(int a, int b) {
  if (a > b) std::swap(a, b);
  return UnitLabel{UnitKind::Segment, {a, b}};
}

/// Edges of the unit as (left, right) id pairs.
inline std::vector<std::pair<int, int>> unit_edges(const PointSet& ps, const UnitLabel& u) {
  return hull_edges(ps, u.ids);
}

struct ConvexPartClosure {
  std::vector<int> hull;      ///< sorted by x
  std::vector<int> interior;  ///< sorted
  PointMask hull_mask = 0;
  PointMask interior_mask = 0;

  UnitLabel label() const { return UnitLabel{UnitKind::ConvexPart, hull}; }
};

inline std::vector<UnitLabel> all_segments(const PointSet& ps) {
  std::vector<UnitLabel> out;
  for (int a = 0; a < ps.n(); ++a)
    for (int b = a + 1; b < ps.n(); ++b) out.push_back(make_segment(a, b));
  return out;
}

namespace detail {

/// Convex chains from l to r strictly on one side of line lr.
/// side = -1: lower chains (left turns); side = +1: upper chains (right turns).
/// Each chain lists only interior vertices, in x-order.
inline void chains_between(const PointSet& ps, int l, int r, int side,
                           std::vector<std::vector<int>>& out) {
  std::vector<int> cand;
  for (int i = l + 1; i < r; ++i)
    if (orient(ps[l], ps[r], ps[i]) == side) cand.push_back(i);
  std::vector<int> chain;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    {
      bool ok = true;
      if (!chain.empty()) {
        const int prev = chain.size() >= 2 ? chain[chain.size() - 2] : l;
        ok = orient(ps[prev], ps[chain.back()], ps[r]) == -side;
      }
      if (ok) out.push_back(chain);
    }
    for (std::size_t k = from; k < cand.size(); ++k) {
      const int c = cand[k];
      if (!chain.empty()) {
        const int prev = chain.size() >= 2 ? chain[chain.size() - 2] : l;
        if (orient(ps[prev], ps[chain.back()], ps[c]) != -side) continue;
      }
      chain.push_back(c);
      rec(k + 1);
      chain.pop_back();
    }
  };
  rec(0);
}

inline PointMask interior_points(const PointSet& ps, const std::vector<int>& hull) {
  PointMask m = 0;
  const PointMask hm = ids_to_mask(hull);
  for (int i = hull.front() + 1; i < hull.back(); ++i)
    if (!(hm & bit(i)) && strictly_inside_hull(ps, hull, i)) m |= bit(i);
  return m;
}

}  // namespace detail

/// Calls f(hull) for every subset of size >= 3 in convex position, grouped by
/// (leftmost, rightmost) in lexicographic order. hull is sorted by x.
template <class F>
void for_each_convex_polygon(const PointSet& ps, F&& f) {
  std::vector<std::vector<int>> lower, upper;
  std::vector<int> hull;
  for (int l = 0; l < ps.n(); ++l)
    for (int r = l + 2; r < ps.n(); ++r) {
      lower.clear();
      upper.clear();
      detail::chains_between(ps, l, r, -1, lower);
      detail::chains_between(ps, l, r, +1, upper);
      for (const auto& lo : lower)
        for (const auto& up : upper) {
          if (lo.empty() && up.empty()) continue;
          hull.clear();
          hull.push_back(l);
          hull.insert(hull.end(), lo.begin(), lo.end());
          hull.insert(hull.end(), up.begin(), up.end());
          hull.push_back(r);
          std::sort(hull.begin(), hull.end());
          f(static_cast<const std::vector<int>&>(hull));
        }
    }
}

/// Streams empty convex faces (size >= 3, no point strictly inside).
template <class F>
void for_each_empty_convex_face(const PointSet& ps, F&& f) {
  for_each_convex_polygon(ps, [&](const std::vector<int>& hull) {
    if (detail::interior_points(ps, hull) == 0) f(UnitLabel{UnitKind::ConvexFace, hull});
  });
}

inline std::vector<UnitLabel> all_empty_convex_faces(const PointSet& ps) {
  std::vector<UnitLabel> out;
  for_each_empty_convex_face(ps, [&](UnitLabel u) { out.push_back(std::move(u)); });
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<UnitLabel> all_empty_triangles(const PointSet& ps) {
  std::vector<UnitLabel> out;
  for (int a = 0; a < ps.n(); ++a)
    for (int b = a + 1; b < ps.n(); ++b)
      for (int c = b + 1; c < ps.n(); ++c) {
        std::vector<int> h{a, b, c};
        if (detail::interior_points(ps, h) == 0)
          out.push_back(UnitLabel{UnitKind::Triangle, std::move(h)});
      }
  return out;
}

/// Singletons, segments, and one closure per convex hull of size >= 3,
/// sorted by (leftmost, rightmost, remaining hull ids).
inline std::vector<ConvexPartClosure> all_convex_parts(const PointSet& ps) {
  std::vector<ConvexPartClosure> out;
  auto add = [&](const std::vector<int>& hull, PointMask interior) {
    ConvexPartClosure c;
    c.hull = hull;
    c.hull_mask = ids_to_mask(hull);
    c.interior_mask = interior;
    c.interior = mask_to_ids(interior);
    out.push_back(std::move(c));
  };
  for (int i = 0; i < ps.n(); ++i) add({i}, 0);
  for (int a = 0; a < ps.n(); ++a)
    for (int b = a + 1; b < ps.n(); ++b) add({a, b}, 0);
  for_each_convex_polygon(ps, [&](const std::vector<int>& hull) {
    add(hull, detail::interior_points(ps, hull));
  });
  std::sort(out.begin(), out.end(), [](const ConvexPartClosure& x, const ConvexPartClosure& y) {
    return x.label() < y.label();
  });
  return out;
}

inline std::string to_string(const UnitLabel& u) {
  std::string s;
  for (std::size_t i = 0; i < u.ids.size(); ++i) {
    if (i) s += '-';
    s += std::to_string(u.ids[i]);
  }
  if (u.kind == UnitKind::TreeSegment) s += " tail=" + std::to_string(u.tail);
  if (u.kind == UnitKind::TreeSegment || u.kind == UnitKind::CycleSegment) {
    auto b = [](Border x) { return x == Border::None ? "-" : x == Border::LtoR ? ">" : "<"; };
    s += std::string(" b=") + b(u.border_left) + b(u.border_right);
  }
  return s;
}

}  // namespace planecount
