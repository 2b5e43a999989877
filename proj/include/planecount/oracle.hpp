#pragma once

// Brute-force ground truth for every class, plus explicit combinations,
// canonical orders, and replay through a transition system. Only orient()
// is shared with the main code; shadows, hulls and containment are redone
// here on purpose.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "planecount/classes.hpp"
#include "planecount/error.hpp"
#include "planecount/framework.hpp"
#include "planecount/geom.hpp"
#include "planecount/pathops.hpp"
#include "planecount/units.hpp"

namespace planecount::oracle {

inline std::size_t default_cap(ClassId cls) {
  return (cls == ClassId::pm || cls == ClassId::tr) ? 9 : 8;
}

namespace detail {

inline bool cross(const PointSet& ps, int a, int b, int c, int d) {
  if (a == c || a == d || b == c || b == d) return false;
  const int o1 = orient(ps[a], ps[b], ps[c]), o2 = orient(ps[a], ps[b], ps[d]);
  const int o3 = orient(ps[c], ps[d], ps[a]), o4 = orient(ps[c], ps[d], ps[b]);
  return o1 != o2 && o3 != o4;
}

inline bool in_triangle(const PointSet& ps, int a, int b, int c, int r) {
  const int o1 = orient(ps[a], ps[b], ps[r]);
  const int o2 = orient(ps[b], ps[c], ps[r]);
  const int o3 = orient(ps[c], ps[a], ps[r]);
  return o1 == o2 && o2 == o3;
}

/// r strictly inside the convex hull of pts (r not in pts).
inline bool in_hull(const PointSet& ps, const std::vector<int>& pts, int r) {
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      for (std::size_t k = j + 1; k < pts.size(); ++k)
        if (in_triangle(ps, pts[i], pts[j], pts[k], r)) return true;
  return false;
}

/// Hull vertices of pts, sorted by id.
inline std::vector<int> hull_of(const PointSet& ps, const std::vector<int>& pts) {
  std::vector<int> out;
  for (int r : pts) {
    std::vector<int> others;
    for (int x : pts)
      if (x != r) others.push_back(x);
    if (!in_hull(ps, others, r)) out.push_back(r);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Edges (a < b) of the convex polygon on convex-position vertices.
inline std::vector<std::pair<int, int>> polygon_edges(const PointSet& ps, const std::vector<int>& h) {
  std::vector<std::pair<int, int>> e;
  if (h.size() == 2) e.emplace_back(h[0], h[1]);
  if (h.size() < 3) return e;
  for (std::size_t i = 0; i < h.size(); ++i)
    for (std::size_t j = i + 1; j < h.size(); ++j) {
      int side = 0;
      bool edge = true;
      for (std::size_t k = 0; k < h.size() && edge; ++k) {
        if (k == i || k == j) continue;
        const int o = orient(ps[h[i]], ps[h[j]], ps[h[k]]);
        if (side == 0) side = o;
        else if (o != side) edge = false;
      }
      if (edge) e.emplace_back(h[i], h[j]);
    }
  return e;
}

struct Segments {
  std::vector<std::pair<int, int>> seg;
  std::vector<std::vector<std::uint64_t>> crosses;  ///< bitset rows
  std::map<std::pair<int, int>, int> index;

  explicit Segments(const PointSet& ps) {
    for (int a = 0; a < ps.n(); ++a)
      for (int b = a + 1; b < ps.n(); ++b) {
        index[{a, b}] = static_cast<int>(seg.size());
        seg.emplace_back(a, b);
      }
    const std::size_t words = (seg.size() + 63) / 64 + 1;
    crosses.assign(seg.size(), std::vector<std::uint64_t>(words, 0));
    for (std::size_t i = 0; i < seg.size(); ++i)
      for (std::size_t j = 0; j < seg.size(); ++j)
        if (cross(ps, seg[i].first, seg[i].second, seg[j].first, seg[j].second))
          crosses[i][j / 64] |= std::uint64_t{1} << (j % 64);
  }

  std::size_t words() const { return crosses.empty() ? 1 : crosses[0].size(); }

  bool hits(int s, const std::vector<std::uint64_t>& chosen) const {
    for (std::size_t w = 0; w < chosen.size(); ++w)
      if (crosses[static_cast<std::size_t>(s)][w] & chosen[w]) return true;
    return false;
  }
};

inline void set_bit(std::vector<std::uint64_t>& v, int i) { v[static_cast<std::size_t>(i) / 64] |= std::uint64_t{1} << (i % 64); }
inline void clear_bit(std::vector<std::uint64_t>& v, int i) { v[static_cast<std::size_t>(i) / 64] &= ~(std::uint64_t{1} << (i % 64)); }

inline Combination edges_to_combination(const std::vector<std::pair<int, int>>& e) {
  Combination c;
  for (auto [a, b] : e) c.push_back({a, b});
  std::sort(c.begin(), c.end());
  return c;
}

/// All crossing-free edge subsets; f receives the chosen edges.
template <class F>
void crossing_free_sets(const PointSet& ps, const Segments& S, F&& f) {
  std::vector<std::uint64_t> chosen(S.words(), 0);
  std::vector<std::pair<int, int>> cur;
  std::function<void(int)> rec = [&](int i) {
    if (i == static_cast<int>(S.seg.size())) {
      f(cur);
      return;
    }
    rec(i + 1);
    if (!S.hits(i, chosen)) {
      set_bit(chosen, i);
      cur.push_back(S.seg[static_cast<std::size_t>(i)]);
      rec(i + 1);
      cur.pop_back();
      clear_bit(chosen, i);
    }
  };
  (void)ps;
  rec(0);
}

/// Maximal crossing-free edge sets (triangulations).
inline std::vector<std::vector<std::pair<int, int>>> triangulations(const PointSet& ps) {
  Segments S(ps);
  std::vector<std::vector<std::pair<int, int>>> out;
  std::vector<std::uint64_t> chosen(S.words(), 0);
  std::vector<int> excluded;
  std::vector<std::pair<int, int>> cur;
  const int m = static_cast<int>(S.seg.size());
  std::function<void(int)> rec = [&](int i) {
    if (i == m) {
      for (int s : excluded)
        if (!S.hits(s, chosen)) return;
      out.push_back(cur);
      return;
    }
    // an excluded segment must eventually be crossed by a chosen one
    if (!S.hits(i, chosen)) {
      set_bit(chosen, i);
      cur.push_back(S.seg[static_cast<std::size_t>(i)]);
      rec(i + 1);
      cur.pop_back();
      clear_bit(chosen, i);
      bool crossable = false;
      for (std::size_t w = 0; w < S.words(); ++w) crossable |= S.crosses[static_cast<std::size_t>(i)][w] != 0;
      if (!crossable) return;
    }
    excluded.push_back(i);
    rec(i + 1);
    excluded.pop_back();
  };
  rec(0);
  return out;
}

/// Empty convex polygons (size >= 3) as sorted vertex lists.
inline std::vector<std::vector<int>> empty_convex_polygons(const PointSet& ps) {
  std::vector<std::vector<int>> out;
  const int n = ps.n();
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    if (std::popcount(m) < 3) continue;
    std::vector<int> pts;
    for (int i = 0; i < n; ++i)
      if ((m >> i) & 1) pts.push_back(i);
    if (hull_of(ps, pts).size() != pts.size()) continue;
    bool empty = true;
    for (int r = 0; r < n && empty; ++r)
      if (!((m >> r) & 1) && in_hull(ps, pts, r)) empty = false;
    if (empty) out.push_back(pts);
  }
  return out;
}

/// Faces of a convex subdivision given by its edge set.
inline Combination faces_of(const PointSet& ps, const std::set<std::pair<int, int>>& edges,
                            const std::vector<std::vector<int>>& polygons) {
  Combination faces;
  for (const auto& poly : polygons) {
    const auto pe = polygon_edges(ps, poly);
    bool ok = true;
    for (auto e : pe)
      if (!edges.count(e)) ok = false;
    if (!ok) continue;
    const std::set<std::pair<int, int>> boundary(pe.begin(), pe.end());
    for (std::size_t i = 0; i < poly.size() && ok; ++i)
      for (std::size_t j = i + 1; j < poly.size() && ok; ++j)
        if (!boundary.count({poly[i], poly[j]}) && edges.count({poly[i], poly[j]})) ok = false;
    if (ok) faces.push_back(poly);
  }
  std::sort(faces.begin(), faces.end());
  return faces;
}

/// Counterclockwise hull order of the whole set.
inline std::vector<int> hull_cycle(const PointSet& ps) {
  std::vector<int> ids(ps.size());
  std::iota(ids.begin(), ids.end(), 0);
  std::vector<int> h = hull_of(ps, ids);
  if (h.size() < 3) return h;
  // angular sort around the leftmost hull vertex
  const int o = h[0];
  std::sort(h.begin() + 1, h.end(), [&](int a, int b) { return orient(ps[o], ps[a], ps[b]) > 0; });
  return h;
}

/// Every vertex has all interior angles below pi.
inline bool all_faces_convex(const PointSet& ps, const std::set<std::pair<int, int>>& edges,
                             const std::vector<int>& cycle) {
  const int n = ps.n();
  std::vector<std::vector<int>> nb(static_cast<std::size_t>(n));
  for (auto [a, b] : edges) {
    nb[static_cast<std::size_t>(a)].push_back(b);
    nb[static_cast<std::size_t>(b)].push_back(a);
  }
  std::map<int, std::pair<int, int>> hull_nb;  // vertex -> (prev, next) in ccw order
  for (std::size_t i = 0; i < cycle.size(); ++i)
    hull_nb[cycle[i]] = {cycle[(i + cycle.size() - 1) % cycle.size()], cycle[(i + 1) % cycle.size()]};
  for (int v = 0; v < n; ++v) {
    auto& adj = nb[static_cast<std::size_t>(v)];
    if (adj.size() < 2) return false;
    const Point& pv = ps[v];
    auto half = [&](int a) {
      const Point& p = ps[a];
      return (p.y > pv.y || (p.y == pv.y && p.x > pv.x)) ? 0 : 1;
    };
    std::sort(adj.begin(), adj.end(), [&](int a, int b) {
      const int ha = half(a), hb = half(b);
      if (ha != hb) return ha < hb;
      return orient(pv, ps[a], ps[b]) > 0;
    });
    for (std::size_t i = 0; i < adj.size(); ++i) {
      const int a = adj[i], b = adj[(i + 1) % adj.size()];
      auto it = hull_nb.find(v);
      if (it != hull_nb.end() && a == it->second.first && b == it->second.second) continue;
      if (orient(pv, ps[a], ps[b]) <= 0) return false;
    }
  }
  return true;
}

}  // namespace detail

/// Every object of the class on ps, each as a sorted Combination, sorted.
inline std::vector<Combination> brute_enumerate(ClassId cls, const PointSet& ps,
                                                std::optional<std::size_t> cap = std::nullopt) {
  const std::size_t limit = cap.value_or(default_cap(cls));
  if (ps.size() > limit) throw CapExceeded(ps.size(), limit);
  const int n = ps.n();
  std::vector<Combination> out;

  switch (cls) {
    case ClassId::pg: {
      detail::Segments S(ps);
      detail::crossing_free_sets(ps, S, [&](const std::vector<std::pair<int, int>>& e) {
        out.push_back(detail::edges_to_combination(e));
      });
      break;
    }
    case ClassId::pm: {
      if (n % 2) break;
      std::vector<int> mate(static_cast<std::size_t>(n), -1);
      std::vector<std::pair<int, int>> cur;
      std::function<void()> rec = [&] {
        int l = 0;
        while (l < n && mate[static_cast<std::size_t>(l)] != -1) ++l;
        if (l == n) {
          out.push_back(detail::edges_to_combination(cur));
          return;
        }
        for (int j = l + 1; j < n; ++j) {
          if (mate[static_cast<std::size_t>(j)] != -1) continue;
          bool ok = true;
          for (auto [a, b] : cur) ok = ok && !detail::cross(ps, l, j, a, b);
          if (!ok) continue;
          mate[static_cast<std::size_t>(l)] = j;
          mate[static_cast<std::size_t>(j)] = l;
          cur.emplace_back(l, j);
          rec();
          cur.pop_back();
          mate[static_cast<std::size_t>(l)] = mate[static_cast<std::size_t>(j)] = -1;
        }
      };
      rec();
      break;
    }
    case ClassId::cp: {
      std::vector<int> block(static_cast<std::size_t>(n), 0);
      std::function<void(int, int)> rec = [&](int i, int blocks) {
        if (i == n) {
          Combination parts(static_cast<std::size_t>(blocks));
          for (int p = 0; p < n; ++p) parts[static_cast<std::size_t>(block[static_cast<std::size_t>(p)])].push_back(p);
          for (const auto& part : parts)
            for (int r = 0; r < n; ++r)
              if (!std::binary_search(part.begin(), part.end(), r) && detail::in_hull(ps, part, r)) return;
          for (std::size_t x = 0; x < parts.size(); ++x)
            for (std::size_t y = x + 1; y < parts.size(); ++y)
              for (std::size_t a = 0; a < parts[x].size(); ++a)
                for (std::size_t b = a + 1; b < parts[x].size(); ++b)
                  for (std::size_t c = 0; c < parts[y].size(); ++c)
                    for (std::size_t d = c + 1; d < parts[y].size(); ++d)
                      if (detail::cross(ps, parts[x][a], parts[x][b], parts[y][c], parts[y][d])) return;
          std::sort(parts.begin(), parts.end());
          out.push_back(std::move(parts));
          return;
        }
        for (int b = 0; b <= blocks; ++b) {
          block[static_cast<std::size_t>(i)] = b;
          rec(i + 1, std::max(blocks, b + 1));
        }
      };
      if (n > 0) {
        block[0] = 0;
        rec(1, 1);
      }
      break;
    }
    case ClassId::tr:
    case ClassId::cs: {
      if (n <= 2) {
        out.push_back({});
        break;
      }
      const auto polygons = detail::empty_convex_polygons(ps);
      const auto cycle = detail::hull_cycle(ps);
      std::set<std::pair<int, int>> hull_edges;
      for (std::size_t i = 0; i < cycle.size(); ++i) {
        int a = cycle[i], b = cycle[(i + 1) % cycle.size()];
        hull_edges.insert({std::min(a, b), std::max(a, b)});
      }
      std::set<Combination> found;
      for (const auto& t : detail::triangulations(ps)) {
        const std::set<std::pair<int, int>> es(t.begin(), t.end());
        if (cls == ClassId::tr) {
          found.insert(detail::faces_of(ps, es, polygons));
          continue;
        }
        std::vector<std::pair<int, int>> inner;
        for (auto e : t)
          if (!hull_edges.count(e)) inner.push_back(e);
        for (std::uint64_t r = 0; r < (std::uint64_t{1} << inner.size()); ++r) {
          std::set<std::pair<int, int>> kept = es;
          for (std::size_t k = 0; k < inner.size(); ++k)
            if ((r >> k) & 1) kept.erase(inner[k]);
          if (!detail::all_faces_convex(ps, kept, cycle)) continue;
          found.insert(detail::faces_of(ps, kept, polygons));
        }
      }
      out.assign(found.begin(), found.end());
      break;
    }
    case ClassId::st: {
      if (n == 1) {
        out.push_back({});
        break;
      }
      detail::Segments S(ps);
      std::vector<std::uint64_t> chosen(S.words(), 0);
      std::vector<std::pair<int, int>> cur;
      const int m = static_cast<int>(S.seg.size());
      std::function<void(int, std::vector<int>)> rec = [&](int i, std::vector<int> comp) {
        if (static_cast<int>(cur.size()) == n - 1) {
          out.push_back(detail::edges_to_combination(cur));
          return;
        }
        if (i == m || m - i < n - 1 - static_cast<int>(cur.size())) return;
        rec(i + 1, comp);
        const auto [a, b] = S.seg[static_cast<std::size_t>(i)];
        if (comp[static_cast<std::size_t>(a)] == comp[static_cast<std::size_t>(b)] || S.hits(i, chosen)) return;
        const int from = comp[static_cast<std::size_t>(b)], to = comp[static_cast<std::size_t>(a)];
        for (int& c : comp)
          if (c == from) c = to;
        detail::set_bit(chosen, i);
        cur.emplace_back(a, b);
        rec(i + 1, comp);
        cur.pop_back();
        detail::clear_bit(chosen, i);
      };
      std::vector<int> comp(static_cast<std::size_t>(n));
      std::iota(comp.begin(), comp.end(), 0);
      rec(0, comp);
      break;
    }
    case ClassId::sc: {
      if (n < 3) break;
      std::vector<int> path{0};
      std::vector<char> used(static_cast<std::size_t>(n), 0);
      used[0] = 1;
      std::vector<std::pair<int, int>> cur;
      auto ok_edge = [&](int a, int b) {
        for (auto [c, d] : cur)
          if (detail::cross(ps, a, b, c, d)) return false;
        return true;
      };
      std::function<void()> rec = [&] {
        const int last = path.back();
        if (static_cast<int>(path.size()) == n) {
          if (path[1] > path.back() || !ok_edge(last, 0)) return;
          auto e = cur;
          e.emplace_back(0, last);
          for (auto& [a, b] : e)
            if (a > b) std::swap(a, b);
          out.push_back(detail::edges_to_combination(e));
          return;
        }
        for (int v = 1; v < n; ++v) {
          if (used[static_cast<std::size_t>(v)] || !ok_edge(last, v)) continue;
          used[static_cast<std::size_t>(v)] = 1;
          path.push_back(v);
          cur.emplace_back(std::min(last, v), std::max(last, v));
          rec();
          cur.pop_back();
          path.pop_back();
          used[static_cast<std::size_t>(v)] = 0;
        }
      };
      rec();
      break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline BigCount brute_count(ClassId cls, const PointSet& ps,
                            std::optional<std::size_t> cap = std::nullopt) {
  return BigCount(brute_enumerate(cls, ps, cap).size());
}

// ---------------------------------------------------------------------------
// Explicit combinations and canonical order.

using ExplicitCombination = std::vector<UnitLabel>;

/// Converts a decoded object into labeled units of the class.
inline ExplicitCombination to_explicit(ClassId cls, const PointSet& ps, const Combination& c) {
  ExplicitCombination out;
  for (const auto& u : c) {
    switch (cls) {
      case ClassId::cp: out.push_back(UnitLabel{UnitKind::ConvexPart, detail::hull_of(ps, u)}); break;
      case ClassId::tr: out.push_back(UnitLabel{UnitKind::Triangle, u}); break;
      case ClassId::cs: out.push_back(UnitLabel{UnitKind::ConvexFace, u}); break;
      default: out.push_back(make_segment(u[0], u[1])); break;
    }
  }
  return out;
}

namespace detail {

struct UnitGeometry {
  std::vector<int> pts;  ///< hull and interior
  std::vector<std::pair<int, int>> edges;
  int left = 0, right = 0;
};

inline UnitGeometry geometry(const PointSet& ps, const UnitLabel& u) {
  UnitGeometry g;
  g.edges = polygon_edges(ps, u.ids);
  g.pts = u.ids;
  if (u.kind == UnitKind::ConvexPart && u.ids.size() >= 3)
    for (int r = 0; r < ps.n(); ++r)
      if (!std::binary_search(u.ids.begin(), u.ids.end(), r) && in_hull(ps, u.ids, r)) g.pts.push_back(r);
  std::sort(g.pts.begin(), g.pts.end());
  g.left = u.ids.front();
  g.right = u.ids.back();
  return g;
}

inline std::set<int> shadow(const PointSet& ps, const UnitGeometry& g, int side) {
  std::set<int> s;
  for (auto [a, b] : g.edges)
    for (int r = 0; r < ps.n(); ++r)
      if (ps[a].x < ps[r].x && ps[r].x < ps[b].x && orient(ps[a], ps[b], ps[r]) == side) s.insert(r);
  return s;
}

}  // namespace detail

/// u2 depends on u1 (vertex-set definition, recomputed independently).
inline bool depends(const PointSet& ps, const UnitLabel& u1, const UnitLabel& u2) {
  const auto g1 = detail::geometry(ps, u1), g2 = detail::geometry(ps, u2);
  const auto low2 = detail::shadow(ps, g2, -1);
  const auto upp1 = detail::shadow(ps, g1, +1);
  for (int p : g1.pts)
    if (low2.count(p)) return true;
  for (int p : g2.pts)
    if (upp1.count(p)) return true;
  return false;
}

/// Dependence decided by sampling vertical lines at every vertex, every
/// pairwise edge crossing, and midpoints between consecutive candidates,
/// in exact rational arithmetic.
inline bool depends_by_sampling(const PointSet& ps, const UnitLabel& u1, const UnitLabel& u2) {
  using Q = boost::multiprecision::cpp_rational;
  const auto g1 = detail::geometry(ps, u1), g2 = detail::geometry(ps, u2);
  const std::vector<int> v1 = u1.ids, v2 = u2.ids;
  std::vector<Q> xs;
  for (int p : v1) xs.emplace_back(ps[p].x);
  for (int p : v2) xs.emplace_back(ps[p].x);
  for (auto [a, b] : g1.edges)
    for (auto [c, d] : g2.edges) {
      // intersection of the supporting lines, if any
      const Q x1 = ps[a].x, y1 = ps[a].y, x2 = ps[b].x, y2 = ps[b].y;
      const Q x3 = ps[c].x, y3 = ps[c].y, x4 = ps[d].x, y4 = ps[d].y;
      const Q den = (x1 - x2) * (y3 - y4) - (y1 - y2) * (x3 - x4);
      if (den == 0) continue;
      const Q t = ((x1 - x3) * (y3 - y4) - (y1 - y3) * (x3 - x4)) / den;
      xs.push_back(x1 + t * (x2 - x1));
    }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  const std::size_t base = xs.size();
  for (std::size_t i = 0; i + 1 < base; ++i) xs.push_back((xs[i] + xs[i + 1]) / 2);

  // y-values of a unit at vertical line x: vertices at x and edge interiors
  auto ys = [&](const std::vector<int>& verts, const std::vector<std::pair<int, int>>& edges, const Q& x) {
    std::vector<Q> out;
    for (int p : verts)
      if (Q(ps[p].x) == x) out.emplace_back(ps[p].y);
    for (auto [a, b] : edges) {
      const Q xa = ps[a].x, xb = ps[b].x;
      if (xa < x && x < xb) out.push_back(Q(ps[a].y) + (x - xa) * (Q(ps[b].y) - Q(ps[a].y)) / (xb - xa));
    }
    return out;
  };
  for (const Q& x : xs) {
    const auto a = ys(g1.pts, g1.edges, x);
    const auto b = ys(g2.pts, g2.edges, x);
    if (a.empty() || b.empty()) continue;
    if (*std::max_element(b.begin(), b.end()) > *std::min_element(a.begin(), a.end())) return true;
  }
  return false;
}

/// Units of C that no other unit of C depends on.
inline ExplicitCombination extremes(const ExplicitCombination& c, const PointSet& ps) {
  ExplicitCombination out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    bool extreme = true;
    for (std::size_t j = 0; j < c.size() && extreme; ++j)
      if (i != j && depends(ps, c[i], c[j])) extreme = false;
    if (extreme) out.push_back(c[i]);
  }
  return out;
}

inline UnitLabel rightmost_extreme(const ExplicitCombination& c, const PointSet& ps) {
  const auto ex = extremes(c, ps);
  for (const auto& u : ex) {
    bool right = true;
    for (const auto& v : ex)
      if (!(v == u) && !(v.rightmost() <= u.leftmost())) right = false;
    if (right) return u;
  }
  throw NoExtreme();
}

/// Repeated removal of right-most extreme units, reversed.
inline ExplicitCombination canonical_order(const ExplicitCombination& c, const PointSet& ps) {
  const std::size_t k = c.size();
  std::vector<std::vector<char>> dep(k, std::vector<char>(k, 0));  // dep[i][j]: j depends on i
  std::vector<int> dependents(k, 0);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (i != j && depends(ps, c[i], c[j])) {
        dep[i][j] = 1;
        ++dependents[i];
      }
  std::vector<char> gone(k, 0);
  ExplicitCombination order;
  for (std::size_t step = 0; step < k; ++step) {
    std::optional<std::size_t> pick;
    for (std::size_t i = 0; i < k; ++i) {
      if (gone[i] || dependents[i] != 0) continue;
      bool right = true;
      for (std::size_t j = 0; j < k && right; ++j)
        if (j != i && !gone[j] && dependents[j] == 0 && !(c[j].rightmost() <= c[i].leftmost()))
          right = false;
      if (right) {
        pick = i;
        break;
      }
    }
    if (!pick) throw NoExtreme();
    gone[*pick] = 1;
    order.push_back(c[*pick]);
    for (std::size_t i = 0; i < k; ++i)
      if (dep[i][*pick]) --dependents[i];
  }
  std::reverse(order.begin(), order.end());
  return order;
}

/// Feeds the canonical order of C through the class transitions; returns
/// every visited state, starting with the initial one.
inline std::vector<State> replay(ClassId cls, const PointSet& ps, const ExplicitCombination& c) {
  if (cls == ClassId::st || cls == ClassId::sc)
    throw Unsupported("replay is defined for pg, pm, cp, cs and tr");
  const auto order = canonical_order(c, ps);
  return visit_problem(cls, ps, [&](const auto& problem) {
    std::map<UnitLabel, std::uint32_t> index;
    for (std::size_t i = 0; i < problem.labels().size(); ++i)
      index.emplace(problem.labels()[i], static_cast<std::uint32_t>(i));
    std::vector<State> states{problem.initial()};
    for (std::size_t step = 0; step < order.size(); ++step) {
      const auto it = index.find(order[step]);
      if (it == index.end()) throw ReplayRejected(step);
      auto next = problem.step(states.back(), it->second);
      if (!next || *next == states.back()) throw ReplayRejected(step);
      states.push_back(*next);
    }
    return states;
  });
}

inline bool replay_reaches_target(ClassId cls, const PointSet& ps, const std::vector<State>& states) {
  return visit_problem(cls, ps, [&](const auto& problem) { return problem.is_target(states.back()); });
}

}  // namespace planecount::oracle
