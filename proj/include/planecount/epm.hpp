#pragma once

// Easy perfect matchings and the interleaved polynomial-delay enumeration
// of perfect matchings and convex partitions.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "planecount/classes.hpp"
#include "planecount/error.hpp"
#include "planecount/framework.hpp"
#include "planecount/geom.hpp"
#include "planecount/pathops.hpp"

namespace planecount {

using Matching = std::vector<std::pair<int, int>>;

/// Counts and unranks easy matchings of subsets of a point set. The
/// leftmost point l of a subset S is matched to some i; the points of S
/// strictly left of the directed line l->i and those strictly right of it
/// must both be even and are matched recursively. Partners are tried in
/// increasing id order, and for a fixed partner the left side varies slowest.
class EasyMatchings {
 public:
  explicit EasyMatchings(const PointSet& ps, PointMask universe)
      : ps_(&ps), universe_(universe) {
    if (popcount(universe) % 2 != 0) throw OddSize();
  }
  explicit EasyMatchings(const PointSet& ps) : EasyMatchings(ps, ps.all_mask()) {}

  BigCount count() { return count(universe_); }

  Matching unrank(BigCount k) {
    if (k < 0 || k >= count()) throw IndexOutOfRange("easy matching index out of range");
    Matching out;
    unrank(universe_, std::move(k), out);
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  std::pair<PointMask, PointMask> split(PointMask s, int l, int i) const {
    PointMask left = 0, right = 0;
    for (PointMask r = s & ~(bit(l) | bit(i)); r; r &= r - 1) {
      const int x = lowest(r);
      (orient((*ps_)[l], (*ps_)[i], (*ps_)[x]) > 0 ? left : right) |= bit(x);
    }
    return {left, right};
  }

  const BigCount& count(PointMask s) {
    if (auto it = memo_.find(s); it != memo_.end()) return it->second;
    BigCount total = 0;
    if (s == 0) {
      total = 1;
    } else {
      const int l = lowest(s);
      for (PointMask r = s & ~bit(l); r; r &= r - 1) {
        const auto [left, right] = split(s, l, lowest(r));
        if (popcount(left) % 2 || popcount(right) % 2) continue;
        const BigCount a = count(left);
        total += a * count(right);
      }
    }
    return memo_.emplace(s, std::move(total)).first->second;
  }

  void unrank(PointMask s, BigCount k, Matching& out) {
    if (s == 0) return;
    const int l = lowest(s);
    for (PointMask r = s & ~bit(l); r; r &= r - 1) {
      const int i = lowest(r);
      const auto [left, right] = split(s, l, i);
      if (popcount(left) % 2 || popcount(right) % 2) continue;
      const BigCount cl = count(left), cr = count(right);
      const BigCount block = cl * cr;
      if (k < block) {
        out.emplace_back(l, i);
        unrank(left, BigCount(k / cr), out);
        unrank(right, BigCount(k % cr), out);
        return;
      }
      k -= block;
    }
    throw Error("easy matching unranking fell through");
  }

  const PointSet* ps_;
  PointMask universe_;
  std::unordered_map<PointMask, BigCount> memo_;
};

inline BigCount count_easy(const PointSet& ps) { return EasyMatchings(ps).count(); }

namespace detail {

inline bool is_easy_on(const PointSet& ps, PointMask s, const std::vector<int>& mate) {
  if (s == 0) return true;
  const int l = lowest(s);
  const int i = mate[static_cast<std::size_t>(l)];
  if (i < 0 || !(s & bit(i))) return false;
  PointMask left = 0, right = 0;
  for (PointMask r = s & ~(bit(l) | bit(i)); r; r &= r - 1) {
    const int x = lowest(r);
    (orient(ps[l], ps[i], ps[x]) > 0 ? left : right) |= bit(x);
  }
  for (PointMask r = left; r; r &= r - 1) {
    const int m = mate[static_cast<std::size_t>(lowest(r))];
    if (m < 0 || !(left & bit(m))) return false;
  }
  return is_easy_on(ps, left, mate) && is_easy_on(ps, right, mate);
}

}  // namespace detail

/// Recursive check of the split property for a matching of the whole set.
inline bool is_easy(const PointSet& ps, const Matching& m) {
  std::vector<int> mate(ps.size(), -1);
  for (auto [a, b] : m) {
    if (a < 0 || b < 0 || a >= ps.n() || b >= ps.n() || a == b) return false;
    if (mate[static_cast<std::size_t>(a)] != -1 || mate[static_cast<std::size_t>(b)] != -1) return false;
    mate[static_cast<std::size_t>(a)] = b;
    mate[static_cast<std::size_t>(b)] = a;
  }
  for (int x : mate)
    if (x == -1) return false;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j)
      if (segments_cross(ps[m[i].first], ps[m[i].second], ps[m[j].first], ps[m[j].second]))
        return false;
  return detail::is_easy_on(ps, ps.all_mask(), mate);
}

/// Streams every easy matching of ps exactly once.
template <class F>
void enumerate_easy(const PointSet& ps, F&& f) {
  EasyMatchings em(ps);
  const BigCount total = em.count();
  for (BigCount k = 0; k < total; ++k) f(em.unrank(k));
}

struct PolyDelayReport {
  std::size_t outputs = 0;
  std::size_t emitted_during_build = 0;
  std::uint64_t build_work = 0;
  std::optional<std::uint64_t> first_output_work;  ///< builder work count at first output
  bool first_output_before_build_end = false;
  BigCount easy_count = 0;
};

namespace detail {

/// Easy objects of the class: easy matchings, and for convex partitions of an
/// odd set an easy matching of all but the rightmost point plus that point
/// as a singleton.
class EasyObjects {
 public:
  EasyObjects(const PointSet& ps, ClassId cls) : ps_(&ps), cls_(cls) {
    universe_ = ps.all_mask();
    if (cls == ClassId::cp && ps.n() % 2 == 1) {
      extra_ = ps.n() - 1;
      universe_ &= ~bit(*extra_);
    }
    em_.emplace(ps, universe_);
  }

  BigCount count() { return em_->count(); }

  Combination get(const BigCount& k) {
    Combination c;
    for (auto [a, b] : em_->unrank(k)) c.push_back({a, b});
    if (extra_) c.push_back({*extra_});
    std::sort(c.begin(), c.end());
    return c;
  }

  /// True iff c is one of the easy objects of this class.
  bool contains(const Combination& c) const {
    Matching m;
    bool saw_extra = false;
    for (const auto& u : c) {
      if (extra_ && u.size() == 1 && u[0] == *extra_) {
        saw_extra = true;
        continue;
      }
      if (u.size() != 2) return false;
      m.emplace_back(u[0], u[1]);
    }
    if (extra_.has_value() != saw_extra) return false;
    std::vector<int> mate(ps_->size(), -1);
    for (auto [a, b] : m) {
      mate[static_cast<std::size_t>(a)] = b;
      mate[static_cast<std::size_t>(b)] = a;
    }
    for (PointMask r = universe_; r; r &= r - 1)
      if (mate[static_cast<std::size_t>(lowest(r))] < 0) return false;
    return is_easy_on(*ps_, universe_, mate);
  }

 private:
  const PointSet* ps_;
  ClassId cls_;
  PointMask universe_ = 0;
  std::optional<int> extra_;
  std::optional<EasyMatchings> em_;
};

}  // namespace detail

/// Emits every perfect matching (pm) or convex partition (cp) once. The
/// first half of the easy objects is emitted while the graph is being built,
/// one every 2^n / half units of builder work; the second half is banked and
/// released one per two easy objects skipped during the final enumeration.
template <class F>
PolyDelayReport poly_delay_enumerate(const PointSet& ps, ClassId cls, F&& emit,
                                     BuildOptions opt = {}) {
  if (cls != ClassId::pm && cls != ClassId::cp)
    throw Unsupported("polynomial-delay enumeration supports pm and cp only");
  if (cls == ClassId::pm && ps.n() % 2) throw OddSize();

  PolyDelayReport rep;
  detail::EasyObjects easy(ps, cls);
  const BigCount total_easy = easy.count();
  rep.easy_count = total_easy;
  const BigCount half = (total_easy + 1) / 2;
  const BigCount budget = BigCount(1) << ps.n();
  const std::uint64_t cadence =
      half == 0 ? 1 : std::max<std::uint64_t>(1, static_cast<std::uint64_t>(budget / half));

  BigCount next_easy = 0;
  std::uint64_t current_work = 0;
  bool building = true;
  auto out = [&](const Combination& c) {
    if (rep.outputs == 0) {
      rep.first_output_work = current_work;
      rep.first_output_before_build_end = building;
    }
    ++rep.outputs;
    if (building) ++rep.emitted_during_build;
    emit(c);
  };
  auto emit_easy_due = [&](std::uint64_t work) {
    if (next_easy < half && work % cadence == 0) {
      out(easy.get(next_easy));
      next_easy += 1;
    }
  };

  emit_easy_due(0);
  auto user_hook = opt.on_work;
  opt.on_work = [&](std::uint64_t work) {
    current_work = work;
    emit_easy_due(work);
    if (user_hook) user_hook(work);
  };
  CombinationGraph g = build_graph(cls, ps, opt);
  rep.build_work = current_work;
  building = false;
  for (; next_easy < half; next_easy += 1) out(easy.get(next_easy));

  count_paths(g);
  const CombinationGraph pruned = prune_dead_ends(g);
  BigCount bank = half;
  std::uint64_t discarded = 0;
  enumerate(pruned, ps, [&](const Combination& c) {
    if (easy.contains(c)) {
      if (++discarded % 2 == 0 && bank < total_easy) {
        out(easy.get(bank));
        bank += 1;
      }
    } else {
      out(c);
    }
    return true;
  });
  for (; bank < total_easy; bank += 1) out(easy.get(bank));
  return rep;
}

}  // namespace planecount
