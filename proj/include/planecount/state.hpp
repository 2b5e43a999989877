#pragma once

// Per-point colorings plus the marker, stored as bit planes so class rules
// reduce to mask arithmetic.

#include <array>
#include <cstdint>
#include <cstring>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "planecount/geom.hpp"

namespace planecount {

enum class ClassId : std::uint8_t { pg = 1, cp = 2, pm = 3, cs = 4, tr = 5, st = 6, sc = 7 };

inline constexpr std::array<ClassId, 7> kAllClasses{ClassId::pg, ClassId::cp, ClassId::pm,
                                                    ClassId::cs, ClassId::tr, ClassId::st,
                                                    ClassId::sc};

inline const char* class_name(ClassId c) {
  switch (c) {
    case ClassId::pg: return "pg";
    case ClassId::cp: return "cp";
    case ClassId::pm: return "pm";
    case ClassId::cs: return "cs";
    case ClassId::tr: return "tr";
    case ClassId::st: return "st";
    case ClassId::sc: return "sc";
  }
  return "?";
}

inline std::optional<ClassId> parse_class(std::string_view s) {
  for (ClassId c : kAllClasses)
    if (s == class_name(c)) return c;
  return std::nullopt;
}

inline constexpr int kMaxPlanes = 3;

/// Bits per color for a palette of the given size.
constexpr int color_bits(int palette) noexcept {
  int w = 0;
  while ((1 << w) < palette) ++w;
  return w;
}

struct State {
  std::array<PointMask, kMaxPlanes> plane{};  ///< bit b of color(i) is bit i of plane[b]
  std::int16_t marker = -1;                   ///< -1: no marker (the source)

  bool has_marker() const noexcept { return marker >= 0; }

  int color(int i) const noexcept {
    int c = 0;
    for (int b = 0; b < kMaxPlanes; ++b) c |= static_cast<int>((plane[b] >> i) & 1U) << b;
    return c;
  }

  void set_color(int i, int c) noexcept {
    for (int b = 0; b < kMaxPlanes; ++b) {
      plane[b] &= ~bit(i);
      if ((c >> b) & 1) plane[b] |= bit(i);
    }
  }

  /// Points whose color equals c, restricted to the first n points.
  PointMask mask_of(int c, PointMask universe) const noexcept {
    PointMask m = universe;
    for (int b = 0; b < kMaxPlanes; ++b) m &= ((c >> b) & 1) ? plane[b] : ~plane[b];
    return m;
  }

  friend bool operator==(const State&, const State&) = default;
};

struct StateHash {
  std::size_t operator()(const State& s) const noexcept {
    auto mix = [](std::uint64_t x) {
      x ^= x >> 33;
      x *= 0xff51afd7ed558ccdULL;
      x ^= x >> 33;
      x *= 0xc4ceb9fe1a85ec53ULL;
      x ^= x >> 33;
      return x;
    };
    std::uint64_t h = mix(s.plane[0] + 0x9e3779b97f4a7c15ULL);
    h = mix(h ^ s.plane[1]) + 0x632be59bd9b4e019ULL;
    h = mix(h ^ s.plane[2]) ^ static_cast<std::uint64_t>(static_cast<std::uint16_t>(s.marker));
    return static_cast<std::size_t>(mix(h));
  }
};

inline State state_from_colors(const std::vector<int>& colors, int marker) {
  State s;
  for (std::size_t i = 0; i < colors.size(); ++i) s.set_color(static_cast<int>(i), colors[i]);
  s.marker = static_cast<std::int16_t>(marker);
  return s;
}

inline std::vector<int> state_colors(const State& s, int n) {
  std::vector<int> c(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) c[static_cast<std::size_t>(i)] = s.color(i);
  return c;
}

/// Canonical bytes: colors packed w bits each, least significant first,
/// followed by the marker as little-endian u16 (0xFFFF when absent).
inline std::size_t encoded_color_bytes(int n, int palette) {
  return (static_cast<std::size_t>(n) * static_cast<std::size_t>(color_bits(palette)) + 7) / 8;
}

inline void encode_state(const State& s, int n, int palette, std::uint8_t* out) {
  const int w = color_bits(palette);
  const std::size_t nb = encoded_color_bytes(n, palette);
  std::memset(out, 0, nb);
  std::size_t pos = 0;
  for (int i = 0; i < n; ++i) {
    const int c = s.color(i);
    for (int b = 0; b < w; ++b, ++pos)
      if ((c >> b) & 1) out[pos / 8] |= static_cast<std::uint8_t>(1U << (pos % 8));
  }
  const std::uint16_t m = s.has_marker() ? static_cast<std::uint16_t>(s.marker) : 0xFFFF;
  out[nb] = static_cast<std::uint8_t>(m & 0xFF);
  out[nb + 1] = static_cast<std::uint8_t>(m >> 8);
}

inline std::vector<std::uint8_t> encode_state(const State& s, int n, int palette) {
  std::vector<std::uint8_t> out(encoded_color_bytes(n, palette) + 2);
  encode_state(s, n, palette, out.data());
  return out;
}

inline State decode_state(const std::uint8_t* in, int n, int palette) {
  const int w = color_bits(palette);
  const std::size_t nb = encoded_color_bytes(n, palette);
  State s;
  std::size_t pos = 0;
  for (int i = 0; i < n; ++i) {
    int c = 0;
    for (int b = 0; b < w; ++b, ++pos)
      if ((in[pos / 8] >> (pos % 8)) & 1) c |= 1 << b;
    s.set_color(i, c);
  }
  const std::uint16_t m = static_cast<std::uint16_t>(in[nb] | (in[nb + 1] << 8));
  s.marker = m == 0xFFFF ? std::int16_t{-1} : static_cast<std::int16_t>(m);
  return s;
}

}  // namespace planecount
