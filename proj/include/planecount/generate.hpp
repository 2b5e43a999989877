#pragma once

// Seeded point-set generators.

#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "planecount/error.hpp"
#include "planecount/geom.hpp"

namespace planecount {

enum class GenMode { Random, Convex };

inline constexpr int kGenerationRetries = 1000;

namespace detail {

inline bool valid(const std::vector<std::pair<Coord, Coord>>& pts) {
  try {
    validate_point_set(pts);
    return true;
  } catch (const GeometryError&) {
    return false;
  }
}

/// Uniform integer in [lo, hi] from raw engine output, independent of the
/// standard library's distribution implementation.
inline Coord uniform(std::mt19937_64& rng, Coord lo, Coord hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t v;
  do v = rng();
  while (v >= limit);
  return lo + static_cast<Coord>(v % span);
}

}  // namespace detail

/// Random mode: coordinates uniform in [-range, range], resampled until the
/// set is valid. Convex mode: distinct x in [-s, s] with s = floor(sqrt(range))
/// on the parabola y = x^2 - s^2, which is strictly convex.
inline std::vector<std::pair<Coord, Coord>> generate_points(int n, GenMode mode, std::uint64_t seed,
                                                             Coord range) {
  if (n < 1 || n > kMaxPoints) throw GenerationFailed("n must be between 1 and 64");
  if (range < 1 || range > kMaxCoord) throw GenerationFailed("coordinate range must be in [1, 2^40]");
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < kGenerationRetries; ++attempt) {
    std::vector<std::pair<Coord, Coord>> pts;
    if (mode == GenMode::Random) {
      for (int i = 0; i < n; ++i) pts.emplace_back(detail::uniform(rng, -range, range), detail::uniform(rng, -range, range));
    } else {
      Coord s = static_cast<Coord>(std::sqrt(static_cast<long double>(range)));
      while (s * s > range) --s;
      while ((s + 1) * (s + 1) <= range) ++s;
      if (2 * s + 1 < n) throw GenerationFailed("coordinate range too small for a convex set of this size");
      std::set<Coord> xs;
      while (static_cast<int>(xs.size()) < n) xs.insert(detail::uniform(rng, -s, s));
      for (Coord x : xs) pts.emplace_back(x, x * x - s * s);
    }
    if (detail::valid(pts)) return pts;
  }
  throw GenerationFailed("no valid point set after " + std::to_string(kGenerationRetries) + " attempts");
}

inline PointSet generate_point_set(int n, GenMode mode, std::uint64_t seed, Coord range) {
  return validate_point_set(generate_points(n, mode, seed, range));
}

}  // namespace planecount
