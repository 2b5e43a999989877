#pragma once

// Transition systems for the seven classes.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "planecount/framework.hpp"
#include "planecount/geom.hpp"
#include "planecount/state.hpp"
#include "planecount/units.hpp"

namespace planecount {

namespace detail {

struct SegmentInfo {
  int p = 0, q = 0;
  PointMask low = 0, upp = 0;
};

inline std::vector<SegmentInfo> segment_table(const PointSet& ps) {
  std::vector<SegmentInfo> t;
  for (int p = 0; p < ps.n(); ++p)
    for (int q = p + 1; q < ps.n(); ++q) {
      const std::pair<int, int> e[1] = {{p, q}};
      t.push_back({p, q, lower_shadow_mask(ps, e), upper_shadow_mask(ps, e)});
    }
  return t;
}

inline bool marker_allows(const State& s, int right) noexcept {
  return !s.has_marker() || right > s.marker;
}

}  // namespace detail

/// All crossing-free geometric graphs.
class PgProblem {
 public:
  enum Color : int { FREE = 0, ALIVE = 1, DEAD = 2 };

  explicit PgProblem(PointSet ps) : ps_(std::move(ps)), segs_(detail::segment_table(ps_)) {
    for (const auto& s : segs_) labels_.push_back(make_segment(s.p, s.q));
  }

  ClassId class_id() const noexcept { return ClassId::pg; }
  int palette() const noexcept { return 3; }
  const PointSet& points() const noexcept { return ps_; }
  const std::vector<UnitLabel>& labels() const noexcept { return labels_; }
  State initial() const { return State{}; }
  bool is_target(const State&) const noexcept { return true; }

  std::optional<State> step(const State& s, std::uint32_t label) const {
    if (label >= segs_.size()) return std::nullopt;
    State out;
    if (!apply(s, segs_[label], out)) return std::nullopt;
    return out;
  }

  template <class F>
  void for_each_transition(const State& s, F&& f) const {
    State out;
    for (std::uint32_t i = 0; i < segs_.size(); ++i)
      if (apply(s, segs_[i], out)) f(i, out);
  }

 private:
  bool apply(const State& s, const detail::SegmentInfo& u, State& out) const noexcept {
    const PointMask alive = s.plane[0], dead = s.plane[1];
    const PointMask ends = bit(u.p) | bit(u.q);
    if (ends & dead) return false;
    if (u.upp & (alive | dead)) return false;
    if (!detail::marker_allows(s, u.q)) return false;
    out = State{};
    out.plane[1] = dead | u.low;
    out.plane[0] = (alive | ends) & ~out.plane[1];
    out.marker = static_cast<std::int16_t>(u.p);
    return !(out == s);
  }

  PointSet ps_;
  std::vector<detail::SegmentInfo> segs_;
  std::vector<UnitLabel> labels_;
};

/// Perfect matchings (segments) and convex partitions (convex parts).
class PartitionProblem {
 public:
  enum Color : int { FREE = 0, ALIVE = 1 };

  PartitionProblem(PointSet ps, ClassId cls) : ps_(std::move(ps)), cls_(cls) {
    if (cls_ == ClassId::pm) {
      for (const auto& s : detail::segment_table(ps_)) {
        units_.push_back({bit(s.p) | bit(s.q), s.low, s.upp, s.p, s.q});
        labels_.push_back(make_segment(s.p, s.q));
      }
    } else {
      for (const auto& part : all_convex_parts(ps_)) {
        const auto e = hull_edges(ps_, part.hull);
        const PointMask pts = part.hull_mask | part.interior_mask;
        units_.push_back({pts, lower_shadow_mask(ps_, e) & ~pts, upper_shadow_mask(ps_, e) & ~pts,
                          part.hull.front(), part.hull.back()});
        labels_.push_back(part.label());
      }
    }
  }

  ClassId class_id() const noexcept { return cls_; }
  int palette() const noexcept { return 2; }
  const PointSet& points() const noexcept { return ps_; }
  const std::vector<UnitLabel>& labels() const noexcept { return labels_; }
  State initial() const { return State{}; }
  bool is_target(const State& s) const noexcept { return s.plane[0] == ps_.all_mask(); }

  std::optional<State> step(const State& s, std::uint32_t label) const {
    if (label >= units_.size()) return std::nullopt;
    State out;
    if (!apply(s, units_[label], out)) return std::nullopt;
    return out;
  }

  template <class F>
  void for_each_transition(const State& s, F&& f) const {
    State out;
    for (std::uint32_t i = 0; i < units_.size(); ++i)
      if (apply(s, units_[i], out)) f(i, out);
  }

 private:
  struct Unit {
    PointMask pts;   ///< hull and interior
    PointMask low;   ///< strict lower shadow
    PointMask upp;   ///< strict upper shadow
    int left, right;
  };

  bool apply(const State& s, const Unit& u, State& out) const noexcept {
    const PointMask alive = s.plane[0];
    if (u.pts & alive) return false;
    if (u.upp & alive) return false;
    if (u.low & ~alive) return false;
    if (!detail::marker_allows(s, u.right)) return false;
    out = State{};
    out.plane[0] = alive | u.pts;
    out.marker = static_cast<std::int16_t>(u.left);
    return true;
  }

  PointSet ps_;
  ClassId cls_;
  std::vector<Unit> units_;
  std::vector<UnitLabel> labels_;
};

/// Convex subdivisions (empty convex faces) and triangulations (empty triangles).
/// The alive points form the x-monotone chain bounding the faces placed so far.
class SubdivisionProblem {
 public:
  enum Color : int { FREE = 0, ALIVE = 1 };

  SubdivisionProblem(PointSet ps, ClassId cls) : ps_(std::move(ps)), cls_(cls) {
    const auto faces =
        cls_ == ClassId::tr ? all_empty_triangles(ps_) : all_empty_convex_faces(ps_);
    for (const auto& f : faces) {
      const auto lo = lower_chain(ps_, f.ids);
      const auto up = upper_chain(ps_, f.ids);
      const int l = f.ids.front(), r = f.ids.back();
      Face face;
      face.left = l;
      face.right = r;
      face.lower = ids_to_mask(lo);
      face.lower_inner = face.lower & ~(bit(l) | bit(r));
      face.upper_inner = ids_to_mask(up) & ~(bit(l) | bit(r));
      face.between = between_mask(l, r);
      faces_.push_back(face);
      labels_.push_back(f);
    }
    start_ = ids_to_mask(lower_hull(ps_));
    goal_ = ids_to_mask(upper_hull(ps_));
  }

  ClassId class_id() const noexcept { return cls_; }
  int palette() const noexcept { return 2; }
  const PointSet& points() const noexcept { return ps_; }
  const std::vector<UnitLabel>& labels() const noexcept { return labels_; }
  State initial() const {
    State s;
    s.plane[0] = start_;
    return s;
  }
  bool is_target(const State& s) const noexcept { return s.plane[0] == goal_; }

  std::optional<State> step(const State& s, std::uint32_t label) const {
    if (label >= faces_.size()) return std::nullopt;
    State out;
    if (!apply(s, faces_[label], out)) return std::nullopt;
    return out;
  }

  template <class F>
  void for_each_transition(const State& s, F&& f) const {
    State out;
    for (std::uint32_t i = 0; i < faces_.size(); ++i)
      if (apply(s, faces_[i], out)) f(i, out);
  }

 private:
  struct Face {
    int left = 0, right = 0;
    PointMask lower = 0, lower_inner = 0, upper_inner = 0, between = 0;
  };

  bool apply(const State& s, const Face& f, State& out) const noexcept {
    const PointMask chain = s.plane[0];
    if (f.lower & ~chain) return false;
    if ((chain & f.between) != f.lower_inner) return false;
    if (!detail::marker_allows(s, f.right)) return false;
    out = State{};
    out.plane[0] = (chain & ~f.lower_inner) | f.upper_inner;
    out.marker = static_cast<std::int16_t>(f.left);
    return true;
  }

  PointSet ps_;
  ClassId cls_;
  std::vector<Face> faces_;
  std::vector<UnitLabel> labels_;
  PointMask start_ = 0, goal_ = 0;
};

/// Crossing-free spanning trees, oriented towards the top point, with
/// borders below first-used endpoints.
class SpanningTreeProblem {
 public:
  enum Color : int { DEAD = 0, A00 = 1, A0L = 2, A0R = 3, A10 = 4, A1L = 5, A1R = 6, FREE = 7 };
  static constexpr int kPerSegment = 18;

  explicit SpanningTreeProblem(PointSet ps) : ps_(std::move(ps)), segs_(detail::segment_table(ps_)) {
    for (const auto& s : segs_)
      for (int t = 0; t < 2; ++t)
        for (int bp = 0; bp < 3; ++bp)
          for (int bq = 0; bq < 3; ++bq)
            labels_.push_back(UnitLabel{UnitKind::TreeSegment, {s.p, s.q}, t == 0 ? s.p : s.q,
                                        static_cast<Border>(bp), static_cast<Border>(bq)});
  }

  ClassId class_id() const noexcept { return ClassId::st; }
  int palette() const noexcept { return 8; }
  const PointSet& points() const noexcept { return ps_; }
  const std::vector<UnitLabel>& labels() const noexcept { return labels_; }
  State initial() const { return all_free(); }

  bool is_target(const State& s) const noexcept {
    const PointMask all = ps_.all_mask();
    if (ps_.n() == 1) return s.mask_of(FREE, all) == all;
    const int top = ps_.top_index();
    if (s.color(top) != A00) return false;
    const PointMask rest = all & ~bit(top);
    return (rest & ~(s.mask_of(A10, all) | s.mask_of(DEAD, all))) == 0;
  }

  static constexpr int alive_code(int degree, int exposure) noexcept { return 1 + degree * 3 + exposure; }

  std::optional<State> step(const State& s, std::uint32_t label) const {
    if (label >= labels_.size()) return std::nullopt;
    const Masks m = masks(s);
    const auto& seg = segs_[label / kPerSegment];
    const int rem = static_cast<int>(label % kPerSegment);
    State out;
    if (!apply(s, m, seg, rem / 9, (rem / 3) % 3, rem % 3, out)) return std::nullopt;
    return out;
  }

  template <class F>
  void for_each_transition(const State& s, F&& f) const {
    const Masks m = masks(s);
    State out;
    for (std::uint32_t i = 0; i < segs_.size(); ++i) {
      const auto& seg = segs_[i];
      if (!segment_ok(s, m, seg)) continue;
      for (int t = 0; t < 2; ++t)
        for (int bp = 0; bp < 3; ++bp)
          for (int bq = 0; bq < 3; ++bq)
            if (apply(s, m, seg, t, bp, bq, out)) f(i * kPerSegment + t * 9 + bp * 3 + bq, out);
    }
  }

 private:
  struct Masks {
    PointMask free = 0, dead = 0, deg0 = 0, drains = 0;
  };

  State all_free() const {
    State s;
    for (int i = 0; i < ps_.n(); ++i) s.set_color(i, FREE);
    return s;
  }

  Masks masks(const State& s) const noexcept {
    const PointMask all = ps_.all_mask();
    Masks m;
    m.free = s.mask_of(FREE, all);
    m.dead = s.mask_of(DEAD, all);
    m.deg0 = s.mask_of(A00, all) | s.mask_of(A0L, all) | s.mask_of(A0R, all);
    m.drains = s.mask_of(A0L, all) | s.mask_of(A0R, all) | s.mask_of(A1L, all) |
               s.mask_of(A1R, all);
    return m;
  }

  bool segment_ok(const State& s, const Masks& m, const detail::SegmentInfo& u) const noexcept {
    if ((bit(u.p) | bit(u.q)) & m.dead) return false;
    if (u.upp & ~m.free) return false;
    if (u.low & (m.free | m.deg0)) return false;
    return detail::marker_allows(s, u.q);
  }

  bool border_ok(int point, int color, int b) const noexcept {
    const bool fresh = color == FREE && point != ps_.bottom_index();
    return fresh ? b != 0 : b == 0;
  }

  bool apply(const State& s, const Masks& m, const detail::SegmentInfo& u, int t, int bp, int bq,
             State& out) const noexcept {
    if (!segment_ok(s, m, u)) return false;
    const int cp = s.color(u.p), cq = s.color(u.q);
    if (!border_ok(u.p, cp, bp) || !border_ok(u.q, cq, bq)) return false;
    const int tail = t == 0 ? u.p : u.q;
    const int ct = t == 0 ? cp : cq;
    if (tail == ps_.top_index()) return false;
    if (ct != FREE && !(m.deg0 & bit(tail))) return false;

    const int drains = popcount(u.low & m.drains) + (cp == A0R || cp == A1R) +
                       (cq == A0L || cq == A1L) + (bp == static_cast<int>(Border::RtoL)) +
                       (bq == static_cast<int>(Border::LtoR));
    if (drains != 1) return false;

    out = s;
    for (PointMask r = u.low; r; r &= r - 1) out.set_color(lowest(r), DEAD);
    auto update = [&](int point, int color, int b, bool is_tail, int keep_exposure, int fresh_exposure_border) {
      int degree, exposure;
      if (color == FREE) {
        degree = is_tail ? 1 : 0;
        exposure = b == fresh_exposure_border ? keep_exposure : 0;
      } else {
        const int a = color - 1;
        degree = a / 3 + (is_tail ? 1 : 0);
        exposure = (a % 3 == keep_exposure) ? keep_exposure : 0;
      }
      out.set_color(point, alive_code(degree, exposure));
    };
    // Left endpoint: a fresh LtoR border exposes to the left; right exposure is consumed.
    update(u.p, cp, bp, t == 0, 1, static_cast<int>(Border::LtoR));
    // Right endpoint mirrors it.
    update(u.q, cq, bq, t == 1, 2, static_cast<int>(Border::RtoL));
    out.marker = static_cast<std::int16_t>(u.p);
    return true;
  }

  PointSet ps_;
  std::vector<detail::SegmentInfo> segs_;
  std::vector<UnitLabel> labels_;
};

/// Crossing-free Hamiltonian cycles.
class SpanningCycleProblem {
 public:
  enum Color : int { D0 = 0, D1 = 1, A0 = 2, AL = 3, AR = 4, FREE = 5 };
  static constexpr int kPerSegment = 9;

  explicit SpanningCycleProblem(PointSet ps)
      : ps_(std::move(ps)), segs_(detail::segment_table(ps_)) {
    for (const auto& s : segs_)
      for (int bp = 0; bp < 3; ++bp)
        for (int bq = 0; bq < 3; ++bq)
          labels_.push_back(UnitLabel{UnitKind::CycleSegment, {s.p, s.q}, -1,
                                      static_cast<Border>(bp), static_cast<Border>(bq)});
  }

  ClassId class_id() const noexcept { return ClassId::sc; }
  int palette() const noexcept { return 6; }
  const PointSet& points() const noexcept { return ps_; }
  const std::vector<UnitLabel>& labels() const noexcept { return labels_; }
  State initial() const {
    State s;
    for (int i = 0; i < ps_.n(); ++i) s.set_color(i, FREE);
    return s;
  }

  bool is_target(const State& s) const noexcept {
    const PointMask all = ps_.all_mask();
    return ps_.n() >= 3 && s.mask_of(D0, all) == all;
  }

  std::optional<State> step(const State& s, std::uint32_t label) const {
    if (label >= labels_.size()) return std::nullopt;
    const Masks m = masks(s);
    const auto& seg = segs_[label / kPerSegment];
    const int rem = static_cast<int>(label % kPerSegment);
    State out;
    if (!apply(s, m, seg, rem / 3, rem % 3, out)) return std::nullopt;
    return out;
  }

  template <class F>
  void for_each_transition(const State& s, F&& f) const {
    const Masks m = masks(s);
    State out;
    for (std::uint32_t i = 0; i < segs_.size(); ++i) {
      if (!segment_ok(s, m, segs_[i])) continue;
      for (int bp = 0; bp < 3; ++bp)
        for (int bq = 0; bq < 3; ++bq)
          if (apply(s, m, segs_[i], bp, bq, out)) f(i * kPerSegment + bp * 3 + bq, out);
    }
  }

 private:
  struct Masks {
    PointMask free = 0, d1 = 0, degree2 = 0;
    int size = 0;  ///< number of segments placed
  };

  Masks masks(const State& s) const noexcept {
    const PointMask all = ps_.all_mask();
    Masks m;
    m.free = s.mask_of(FREE, all);
    m.d1 = s.mask_of(D1, all);
    m.degree2 = s.mask_of(D0, all) | m.d1;
    const int deg1 = popcount(all & ~m.free & ~m.degree2);
    m.size = (deg1 + 2 * popcount(m.degree2)) / 2;
    return m;
  }

  bool segment_ok(const State& s, const Masks& m, const detail::SegmentInfo& u) const noexcept {
    if ((bit(u.p) | bit(u.q)) & m.degree2) return false;
    if (u.upp & ~m.free) return false;
    if (u.low & ~m.degree2) return false;
    return detail::marker_allows(s, u.q);
  }

  bool border_ok(int point, int color, int b) const noexcept {
    const bool fresh = color == FREE && point != ps_.bottom_index();
    return fresh ? b != 0 : b == 0;
  }

  bool apply(const State& s, const Masks& m, const detail::SegmentInfo& u, int bp, int bq,
             State& out) const noexcept {
    if (!segment_ok(s, m, u)) return false;
    const int cp = s.color(u.p), cq = s.color(u.q);
    if (!border_ok(u.p, cp, bp) || !border_ok(u.q, cq, bq)) return false;
    const int drains = popcount(u.low & m.d1) + (cp == AR) + (cq == AL) +
                       (bp == static_cast<int>(Border::RtoL)) +
                       (bq == static_cast<int>(Border::LtoR));
    const int want = (m.size + 1 < ps_.n()) ? 1 : 0;
    if (drains != want) return false;

    out = s;
    for (PointMask r = u.low & m.d1; r; r &= r - 1) out.set_color(lowest(r), D0);
    if (cp == FREE)
      out.set_color(u.p, bp == static_cast<int>(Border::LtoR) ? AL : A0);
    else
      out.set_color(u.p, cp == AL ? D1 : D0);
    if (cq == FREE)
      out.set_color(u.q, bq == static_cast<int>(Border::RtoL) ? AR : A0);
    else
      out.set_color(u.q, cq == AR ? D1 : D0);
    out.marker = static_cast<std::int16_t>(u.p);
    return true;
  }

  PointSet ps_;
  std::vector<detail::SegmentInfo> segs_;
  std::vector<UnitLabel> labels_;
};

/// Calls f with the problem object for the given class.
template <class F>
decltype(auto) visit_problem(ClassId cls, const PointSet& ps, F&& f) {
  switch (cls) {
    case ClassId::pg: return f(PgProblem(ps));
    case ClassId::cp: return f(PartitionProblem(ps, ClassId::cp));
    case ClassId::pm: return f(PartitionProblem(ps, ClassId::pm));
    case ClassId::cs: return f(SubdivisionProblem(ps, ClassId::cs));
    case ClassId::tr: return f(SubdivisionProblem(ps, ClassId::tr));
    case ClassId::st: return f(SpanningTreeProblem(ps));
    case ClassId::sc: return f(SpanningCycleProblem(ps));
  }
  throw Unsupported("unknown class");
}

inline int class_palette(ClassId cls) {
  switch (cls) {
    case ClassId::pg: return 3;
    case ClassId::st: return 8;
    case ClassId::sc: return 6;
    default: return 2;
  }
}

inline CombinationGraph build_graph(ClassId cls, const PointSet& ps, const BuildOptions& opt = {}) {
  return visit_problem(cls, ps, [&](const auto& problem) { return build(problem, opt); });
}

}  // namespace planecount
