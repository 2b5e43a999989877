#pragma once

// Counting, pruning, enumeration, and unranking of source-to-sink paths,
// plus decoding and geometric validation of the represented objects.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "planecount/error.hpp"
#include "planecount/framework.hpp"
#include "planecount/geom.hpp"
#include "planecount/units.hpp"

namespace planecount {

/// A decoded object: one sorted id list per unit, the list itself sorted.
/// Segments give pairs, faces give hull vertices, convex parts give all
/// their points (hull and interior).
using Combination = std::vector<std::vector<int>>;

/// Fills g.suffix and returns the number of source-to-sink paths.
inline BigCount count_paths(CombinationGraph& g) {
  g.suffix.assign(g.node_count(), BigCount(0));
  for (std::size_t v = g.node_count(); v-- > 0;) {
    BigCount c = g.target[v] ? 1 : 0;
    for (const Edge& e : g.out_edges(static_cast<std::uint32_t>(v))) c += g.suffix[e.target];
    g.suffix[v] = std::move(c);
  }
  return g.suffix.empty() ? BigCount(0) : g.suffix[0];
}

inline BigCount count_paths(const CombinationGraph& g) {
  CombinationGraph copy = g;
  return count_paths(copy);
}

/// Subgraph of nodes lying on a source-to-sink path; node order preserved.
/// The source is always kept.
inline CombinationGraph prune_dead_ends(const CombinationGraph& in) {
  CombinationGraph g = in;
  if (!g.has_counts()) count_paths(g);
  const std::size_t n = g.node_count();
  std::vector<std::uint32_t> remap(n, UINT32_MAX);
  CombinationGraph out;
  out.class_id = g.class_id;
  out.n = g.n;
  out.palette = g.palette;
  out.labels = g.labels;
  for (std::size_t v = 0; v < n; ++v)
    if (v == 0 || g.suffix[v] != 0) {
      remap[v] = static_cast<std::uint32_t>(out.nodes.size());
      out.nodes.push_back(g.nodes[v]);
      out.target.push_back(g.target[v]);
      out.suffix.push_back(g.suffix[v]);
    }
  out.level_begin.push_back(0);
  for (std::size_t k = 0; k < g.level_count(); ++k) {
    std::uint32_t kept = 0;
    for (std::uint32_t v = g.level_begin[k]; v < g.level_begin[k + 1]; ++v)
      if (remap[v] != UINT32_MAX) ++kept;
    if (kept == 0) break;
    out.level_begin.push_back(out.level_begin.back() + kept);
  }
  out.edge_begin.push_back(0);
  for (std::size_t v = 0; v < n; ++v) {
    if (remap[v] == UINT32_MAX) continue;
    for (const Edge& e : g.out_edges(static_cast<std::uint32_t>(v)))
      if (remap[e.target] != UINT32_MAX) out.edges.push_back({e.label, remap[e.target]});
    out.edge_begin.push_back(out.edges.size());
  }
  return out;
}

/// Depth-first walk over source-to-sink paths. At each node the sink
/// (if the node is a target) comes first, then edges in label order.
class PathCursor {
 public:
  explicit PathCursor(const CombinationGraph& g) : g_(&g) {
    if (!g.has_counts()) throw Error("path cursor needs suffix counts");
    if (g.node_count() > 0 && g.suffix[0] != 0) stack_.push_back({0, -1});
  }

  /// Advances to the next path; returns false when exhausted.
  bool next() {
    while (!stack_.empty()) {
      Frame& f = stack_.back();
      const auto edges = g_->out_edges(f.node);
      // slot -1 is the sink option
      if (f.slot == -1) {
        f.slot = 0;
        if (g_->target[f.node]) return true;
        continue;
      }
      if (static_cast<std::size_t>(f.slot) >= edges.size()) {
        stack_.pop_back();
        if (!labels_.empty()) labels_.pop_back();
        continue;
      }
      const Edge e = edges[static_cast<std::size_t>(f.slot++)];
      if (g_->suffix[e.target] == 0) continue;
      labels_.push_back(e.label);
      stack_.push_back({e.target, -1});
    }
    return false;
  }

  /// Labels of the current path, in path order.
  const std::vector<std::uint32_t>& labels() const noexcept { return labels_; }

 private:
  struct Frame {
    std::uint32_t node;
    std::int64_t slot;
  };
  const CombinationGraph* g_;
  std::vector<Frame> stack_;
  std::vector<std::uint32_t> labels_;
};

/// Labels of the k-th path in enumeration order.
inline std::vector<std::uint32_t> unrank(const CombinationGraph& g, const BigCount& k) {
  if (!g.has_counts()) throw Error("unrank needs suffix counts");
  if (k < 0 || g.node_count() == 0 || k >= g.suffix[0])
    throw IndexOutOfRange("index out of range");
  std::vector<std::uint32_t> out;
  BigCount rest = k;
  std::uint32_t v = 0;
  for (;;) {
    if (g.target[v]) {
      if (rest == 0) return out;
      rest -= 1;
    }
    bool moved = false;
    for (const Edge& e : g.out_edges(v)) {
      const BigCount& c = g.suffix[e.target];
      if (rest < c) {
        out.push_back(e.label);
        v = e.target;
        moved = true;
        break;
      }
      rest -= c;
    }
    if (!moved) throw Error("inconsistent suffix counts");
  }
}

/// Points of unit u: hull vertices plus, for convex parts, every point
/// strictly inside the hull.
inline std::vector<int> unit_points(const PointSet& ps, const UnitLabel& u) {
  std::vector<int> pts = u.ids;
  if (u.kind == UnitKind::ConvexPart && u.ids.size() >= 3)
    for (int r = u.ids.front() + 1; r < u.ids.back(); ++r)
      if (!std::binary_search(u.ids.begin(), u.ids.end(), r) && strictly_inside_hull(ps, u.ids, r))
        pts.push_back(r);
  std::sort(pts.begin(), pts.end());
  return pts;
}

inline Combination decode(const CombinationGraph& g, const PointSet& ps,
                          const std::vector<std::uint32_t>& labels) {
  Combination c;
  c.reserve(labels.size());
  for (std::uint32_t l : labels) c.push_back(unit_points(ps, g.labels[l]));
  std::sort(c.begin(), c.end());
  return c;
}

/// Enumerates paths in order, calling f(Combination) until f returns
/// false or limit objects were produced. Returns the number produced.
template <class F>
std::size_t enumerate(const CombinationGraph& g, const PointSet& ps, F&& f,
                      std::optional<std::size_t> limit = std::nullopt) {
  PathCursor cur(g);
  std::size_t produced = 0;
  while ((!limit || produced < *limit) && cur.next()) {
    ++produced;
    if (!f(decode(g, ps, cur.labels()))) break;
  }
  return produced;
}

/// Drawing edges of an object: union of unit boundary edges, sorted.
inline std::vector<std::pair<int, int>> object_edges(ClassId cls, const PointSet& ps,
                                                     const Combination& c) {
  std::set<std::pair<int, int>> edges;
  for (const auto& unit : c) {
    if (unit.size() == 2) {
      edges.insert({unit[0], unit[1]});
      continue;
    }
    if (unit.size() < 2) continue;
    std::vector<int> hull = unit;
    if (cls == ClassId::cp) {
      const auto lo = lower_chain(ps, unit);
      const auto up = upper_chain(ps, unit);
      std::set<int> h(lo.begin(), lo.end());
      h.insert(up.begin(), up.end());
      hull.assign(h.begin(), h.end());
    }
    for (auto [a, b] : hull_edges(ps, hull)) edges.insert({a, b});
  }
  return {edges.begin(), edges.end()};
}

enum class ValidationReason {
  Ok,
  BadUnit,
  Crossing,
  DuplicateEdge,
  NotPerfectMatching,
  NotPartition,
  HullsIntersect,
  NotSubdivision,
  NotSpanningTree,
  NotSpanningCycle,
};

inline const char* to_string(ValidationReason r) {
  switch (r) {
    case ValidationReason::Ok: return "Ok";
    case ValidationReason::BadUnit: return "BadUnit";
    case ValidationReason::Crossing: return "Crossing";
    case ValidationReason::DuplicateEdge: return "DuplicateEdge";
    case ValidationReason::NotPerfectMatching: return "NotPerfectMatching";
    case ValidationReason::NotPartition: return "NotPartition";
    case ValidationReason::HullsIntersect: return "HullsIntersect";
    case ValidationReason::NotSubdivision: return "NotSubdivision";
    case ValidationReason::NotSpanningTree: return "NotSpanningTree";
    case ValidationReason::NotSpanningCycle: return "NotSpanningCycle";
  }
  return "?";
}

struct Validation {
  bool ok = true;
  ValidationReason reason = ValidationReason::Ok;
  explicit operator bool() const noexcept { return ok; }
};

namespace detail {

inline Validation fail(ValidationReason r) { return {false, r}; }

inline bool edges_pairwise_noncrossing(const PointSet& ps,
                                       const std::vector<std::pair<int, int>>& e) {
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::size_t j = i + 1; j < e.size(); ++j)
      if (segments_cross(ps[e[i].first], ps[e[i].second], ps[e[j].first], ps[e[j].second]))
        return false;
  return true;
}

inline int find_root(std::vector<int>& parent, int x) {
  while (parent[static_cast<std::size_t>(x)] != x)
    x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
  return x;
}

inline bool in_convex_position(const PointSet& ps, const std::vector<int>& ids) {
  if (ids.size() < 3) return true;
  const auto lo = lower_chain(ps, ids);
  const auto up = upper_chain(ps, ids);
  return lo.size() + up.size() - 2 == ids.size();
}

/// Point strictly inside the convex polygon whose vertices (any order) are given.
inline bool strictly_inside_convex(std::vector<Point> poly, const Point& r) {
  std::sort(poly.begin(), poly.end(), [](const Point& a, const Point& b) { return a.x < b.x; });
  std::vector<Point> lo, up;
  for (const Point& p : poly) {
    while (lo.size() >= 2 && orient(lo[lo.size() - 2], lo.back(), p) <= 0) lo.pop_back();
    lo.push_back(p);
    while (up.size() >= 2 && orient(up[up.size() - 2], up.back(), p) >= 0) up.pop_back();
    up.push_back(p);
  }
  for (std::size_t i = 0; i + 1 < lo.size(); ++i)
    if (orient(lo[i], lo[i + 1], r) <= 0) return false;
  for (std::size_t i = 0; i + 1 < up.size(); ++i)
    if (orient(up[i], up[i + 1], r) >= 0) return false;
  return lo.size() >= 2 && poly.front().x < r.x && r.x < poly.back().x;
}

}  // namespace detail

/// Geometric recheck of a decoded object against its class definition.
inline Validation validate_output(ClassId cls, const PointSet& ps, const Combination& c) {
  using detail::fail;
  const int n = ps.n();
  for (const auto& u : c) {
    if (u.empty() || !std::is_sorted(u.begin(), u.end()) ||
        std::adjacent_find(u.begin(), u.end()) != u.end())
      return fail(ValidationReason::BadUnit);
    for (int id : u)
      if (id < 0 || id >= n) return fail(ValidationReason::BadUnit);
  }
  const bool segment_class = cls == ClassId::pg || cls == ClassId::pm || cls == ClassId::st ||
                             cls == ClassId::sc;
  if (segment_class) {
    std::set<std::pair<int, int>> seen;
    std::vector<std::pair<int, int>> e;
    for (const auto& u : c) {
      if (u.size() != 2) return fail(ValidationReason::BadUnit);
      if (!seen.insert({u[0], u[1]}).second) return fail(ValidationReason::DuplicateEdge);
      e.emplace_back(u[0], u[1]);
    }
    if (!detail::edges_pairwise_noncrossing(ps, e)) return fail(ValidationReason::Crossing);
    std::vector<int> deg(static_cast<std::size_t>(n), 0);
    for (auto [a, b] : e) ++deg[static_cast<std::size_t>(a)], ++deg[static_cast<std::size_t>(b)];
    if (cls == ClassId::pm) {
      for (int d : deg)
        if (d != 1) return fail(ValidationReason::NotPerfectMatching);
    } else if (cls == ClassId::st) {
      if (static_cast<int>(e.size()) != n - 1) return fail(ValidationReason::NotSpanningTree);
      std::vector<int> parent(static_cast<std::size_t>(n));
      std::iota(parent.begin(), parent.end(), 0);
      for (auto [a, b] : e) {
        const int ra = detail::find_root(parent, a), rb = detail::find_root(parent, b);
        if (ra == rb) return fail(ValidationReason::NotSpanningTree);
        parent[static_cast<std::size_t>(ra)] = rb;
      }
    } else if (cls == ClassId::sc) {
      if (n < 3 || static_cast<int>(e.size()) != n) return fail(ValidationReason::NotSpanningCycle);
      for (int d : deg)
        if (d != 2) return fail(ValidationReason::NotSpanningCycle);
      std::vector<int> parent(static_cast<std::size_t>(n));
      std::iota(parent.begin(), parent.end(), 0);
      for (auto [a, b] : e) parent[static_cast<std::size_t>(detail::find_root(parent, a))] = detail::find_root(parent, b);
      for (int i = 0; i < n; ++i)
        if (detail::find_root(parent, i) != detail::find_root(parent, 0))
          return fail(ValidationReason::NotSpanningCycle);
    }
    return {};
  }

  if (cls == ClassId::cp) {
    std::vector<int> owner(static_cast<std::size_t>(n), -1);
    for (std::size_t k = 0; k < c.size(); ++k)
      for (int id : c[k]) {
        if (owner[static_cast<std::size_t>(id)] != -1) return fail(ValidationReason::NotPartition);
        owner[static_cast<std::size_t>(id)] = static_cast<int>(k);
      }
    for (int o : owner)
      if (o == -1) return fail(ValidationReason::NotPartition);
    // every part must be the full set of points in its hull, and hulls must be disjoint
    std::vector<std::vector<int>> hulls;
    for (const auto& part : c) {
      const auto lo = lower_chain(ps, part);
      const auto up = upper_chain(ps, part);
      std::set<int> h(lo.begin(), lo.end());
      h.insert(up.begin(), up.end());
      std::vector<int> hull(h.begin(), h.end());
      for (int r = 0; r < n; ++r)
        if (!std::binary_search(part.begin(), part.end(), r) && strictly_inside_hull(ps, hull, r))
          return fail(ValidationReason::HullsIntersect);
      for (int r : part)
        if (!h.count(r) && !strictly_inside_hull(ps, hull, r))
          return fail(ValidationReason::BadUnit);
      hulls.push_back(std::move(hull));
    }
    std::vector<std::pair<int, int>> all_edges;
    for (const auto& h : hulls)
      for (auto e : hull_edges(ps, h)) all_edges.push_back(e);
    if (!detail::edges_pairwise_noncrossing(ps, all_edges)) return fail(ValidationReason::HullsIntersect);
    return {};
  }

  // subdivisions: faces are empty convex polygons, pairwise interior-disjoint,
  // whose doubled areas sum to that of the convex hull
  if (cls == ClassId::cs || cls == ClassId::tr) {
    const auto hull_all = [&] {
      std::vector<int> ids = all_ids(ps);
      const auto lo = lower_chain(ps, ids);
      const auto up = upper_chain(ps, ids);
      std::set<int> h(lo.begin(), lo.end());
      h.insert(up.begin(), up.end());
      return std::vector<int>(h.begin(), h.end());
    }();
    auto area2 = [&](const std::vector<int>& poly) {
      // counterclockwise order: lower chain then upper chain reversed
      const auto lo = lower_chain(ps, poly);
      const auto up = upper_chain(ps, poly);
      std::vector<int> cyc(lo.begin(), lo.end());
      for (std::size_t i = up.size() - 1; i-- > 1;) cyc.push_back(up[i]);
      Wide a = 0;
      for (std::size_t i = 1; i + 1 < cyc.size(); ++i)
        a += doubled_area(ps[cyc[0]], ps[cyc[i]], ps[cyc[i + 1]]);
      return a;
    };
    if (n <= 2) return c.empty() ? Validation{} : fail(ValidationReason::NotSubdivision);
    Wide total = 0;
    std::vector<std::pair<int, int>> all_edges;
    std::set<std::pair<int, int>> edge_set;
    for (const auto& f : c) {
      if (f.size() < 3 || (cls == ClassId::tr && f.size() != 3)) return fail(ValidationReason::BadUnit);
      if (!detail::in_convex_position(ps, f)) return fail(ValidationReason::BadUnit);
      for (int r = 0; r < n; ++r)
        if (!std::binary_search(f.begin(), f.end(), r) && strictly_inside_hull(ps, f, r))
          return fail(ValidationReason::NotSubdivision);
      total += area2(f);
      for (auto e : hull_edges(ps, f))
        if (edge_set.insert(e).second) all_edges.push_back(e);
    }
    if (!detail::edges_pairwise_noncrossing(ps, all_edges)) return fail(ValidationReason::Crossing);
    for (const auto& f : c) {
      std::vector<Point> doubled;
      for (int id : f) doubled.push_back({2 * ps[id].x, 2 * ps[id].y, id});
      for (auto [a, b] : all_edges) {
        const Point mid{ps[a].x + ps[b].x, ps[a].y + ps[b].y, -1};
        if (detail::strictly_inside_convex(doubled, mid)) return fail(ValidationReason::NotSubdivision);
      }
    }
    if (total != area2(hull_all)) return fail(ValidationReason::NotSubdivision);
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    for (const auto& f : c)
      for (int id : f) used[static_cast<std::size_t>(id)] = 1;
    for (char u : used)
      if (!u) return fail(ValidationReason::NotSubdivision);
    return {};
  }
  return fail(ValidationReason::BadUnit);
}

}  // namespace planecount
