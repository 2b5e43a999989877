#pragma once

// Forbidden color patterns: pruning filters, invariant checks, and exact
// counts of pattern-avoiding strings.

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "planecount/classes.hpp"
#include "planecount/framework.hpp"
#include "planecount/state.hpp"

namespace planecount {

using BigRational = boost::multiprecision::cpp_rational;

/// Matches a substring s m^j e with s in start, m in middle, e in end and
/// j >= min_middle. Sets are bitmasks over color codes.
struct Pattern {
  std::uint32_t start = 0;
  std::uint32_t middle = 0;
  std::uint32_t end = 0;
  int min_middle = 0;
};

/// Symbol outside every palette; matches no pattern set.
inline constexpr int kBarrierSymbol = 31;

namespace detail {

constexpr std::uint32_t colors(std::initializer_list<int> cs) {
  std::uint32_t m = 0;
  for (int c : cs) m |= 1U << c;
  return m;
}

/// Per-pattern automaton state: bit 0 = opened with no middle yet, bit 1 =
/// opened with at least one middle symbol.
struct PatternScanner {
  const std::vector<Pattern>* patterns;

  /// Returns false when symbol c completes a match.
  bool feed(std::uint32_t& st, int c) const {
    std::uint32_t next = 0;
    for (std::size_t k = 0; k < patterns->size(); ++k) {
      const Pattern& p = (*patterns)[k];
      const std::uint32_t s = (st >> (2 * k)) & 3U;
      const std::uint32_t sym = 1U << c;
      const bool ready = ((s & 1U) && p.min_middle == 0) || (s & 2U);
      if ((p.end & sym) && ready) return false;
      std::uint32_t ns = 0;
      if (s != 0 && (p.middle & sym)) ns |= 2U;
      if (p.start & sym) ns |= 1U;
      next |= ns << (2 * k);
    }
    st = next;
    return true;
  }
};

}  // namespace detail

/// Patterns that real graph states never show (used for invariant checks).
inline std::vector<Pattern> invariant_patterns(ClassId cls) {
  using detail::colors;
  if (cls == ClassId::pg) {
    using C = PgProblem::Color;
    return {{colors({C::DEAD}), colors({C::FREE}), colors({C::DEAD}), 1}};
  }
  if (cls == ClassId::st) {
    using C = SpanningTreeProblem::Color;
    return {{colors({C::A1L}), colors({C::FREE}), colors({C::A1R}), 0},
            {colors({C::A0L}), colors({C::DEAD, C::A00, C::FREE}), colors({C::A0R}), 0}};
  }
  return {};
}

/// Patterns whose states cannot be completed to a target.
inline std::vector<Pattern> prune_patterns(ClassId cls) {
  using detail::colors;
  if (cls == ClassId::st) {
    using C = SpanningTreeProblem::Color;
    return {{colors({C::A0R, C::A1R}), colors({C::DEAD, C::FREE}), colors({C::A0L, C::A1L}), 0}};
  }
  if (cls == ClassId::sc) {
    using C = SpanningCycleProblem::Color;
    return {{colors({C::AR}), colors({C::D0, C::D1, C::FREE}), colors({C::AL}), 0}};
  }
  return {};
}

/// All patterns that bound the number of states.
inline std::vector<Pattern> counting_patterns(ClassId cls) {
  auto p = invariant_patterns(cls);
  for (const auto& q : prune_patterns(cls)) p.push_back(q);
  return p;
}

/// True iff the color string avoids every pattern.
inline bool avoids(const std::vector<int>& colors, const std::vector<Pattern>& patterns) {
  detail::PatternScanner scan{&patterns};
  std::uint32_t st = 0;
  for (int c : colors)
    if (!scan.feed(st, c)) return false;
  return true;
}

inline bool avoids(const State& s, int n, const std::vector<Pattern>& patterns) {
  return avoids(state_colors(s, n), patterns);
}

/// True iff the state shows none of the class's never-occurring patterns.
inline bool forbidden_pattern_check(ClassId cls, const State& s, int n) {
  return avoids(s, n, invariant_patterns(cls));
}

/// Consecutive-triple rule for pg states: with p(i+1) below the line through
/// p(i) and p(i+2) the colors dead, free, dead cannot occur, and with p(i+1)
/// above it free, dead, free cannot occur. Returns the number of offending
/// triples.
inline int pg_triple_violations(const PointSet& ps, const State& s) {
  using C = PgProblem::Color;
  int bad = 0;
  for (int i = 0; i + 2 < ps.n(); ++i) {
    const int a = s.color(i), b = s.color(i + 1), c = s.color(i + 2);
    const bool below = orient(ps[i], ps[i + 2], ps[i + 1]) < 0;
    if (below && a == C::DEAD && b == C::FREE && c == C::DEAD) ++bad;
    if (!below && a == C::FREE && b == C::DEAD && c == C::FREE) ++bad;
  }
  return bad;
}

/// Node filter for build(); keeps states that can still reach a target.
/// A free bottom point breaks a pattern occurrence: it has no border, so a
/// segment ending there separates the two facing drains.
inline std::function<bool(const State&)> prune_filter(ClassId cls, const PointSet& ps) {
  if (cls != ClassId::st && cls != ClassId::sc)
    throw Unsupported(std::string("no pruning filter for class ") + class_name(cls));
  const int free_color = cls == ClassId::st ? static_cast<int>(SpanningTreeProblem::FREE)
                                            : static_cast<int>(SpanningCycleProblem::FREE);
  return [patterns = prune_patterns(cls), n = ps.n(), bottom = ps.bottom_index(), free_color](const State& s) {
    auto colors = state_colors(s, n);
    if (colors[static_cast<std::size_t>(bottom)] == free_color) colors[static_cast<std::size_t>(bottom)] = kBarrierSymbol;
    return avoids(colors, patterns);
  };
}

/// Number of length-n strings over the class palette avoiding its patterns.
inline BigCount count_avoiding_strings(ClassId cls, int length) {
  const auto patterns = counting_patterns(cls);
  const int palette = class_palette(cls);
  detail::PatternScanner scan{&patterns};
  std::map<std::uint32_t, BigCount> cur{{0U, BigCount(1)}}, next;
  for (int i = 0; i < length; ++i) {
    next.clear();
    for (const auto& [st, cnt] : cur)
      for (int c = 0; c < palette; ++c) {
        std::uint32_t t = st;
        if (scan.feed(t, c)) next[t] += cnt;
      }
    cur.swap(next);
  }
  BigCount total = 0;
  for (const auto& [st, cnt] : cur) total += cnt;
  return total;
}

/// a(n) / a(n-1) for the avoiding-string counts, exactly.
inline BigRational growth_estimate(ClassId cls, int n) {
  return BigRational(count_avoiding_strings(cls, n), count_avoiding_strings(cls, n - 1));
}

}  // namespace planecount
