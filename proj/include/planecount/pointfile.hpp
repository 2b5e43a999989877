#pragma once

// Text point files: '#' comments, a count line, then one "x y" per line.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "planecount/error.hpp"
#include "planecount/geom.hpp"

namespace planecount {

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> fields(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

template <class T>
bool parse_int(std::string_view s, T& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size();
}

}  // namespace detail

/// Raw coordinates in file order; throws ParseError with a 1-based line.
inline std::vector<std::pair<Coord, Coord>> parse_points(std::istream& in) {
  std::vector<std::pair<Coord, Coord>> pts;
  std::string line;
  std::size_t lineno = 0;
  long long expected = -1;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view s = detail::trim(line);
    if (s.empty() || s.front() == '#') continue;
    const auto f = detail::fields(s);
    if (expected < 0) {
      if (f.size() != 1 || !detail::parse_int(f[0], expected) || expected < 1)
        throw ParseError(lineno, "expected a positive point count");
      continue;
    }
    if (static_cast<long long>(pts.size()) == expected)
      throw ParseError(lineno, "more points than declared");
    Coord x = 0, y = 0;
    if (f.size() != 2 || !detail::parse_int(f[0], x) || !detail::parse_int(f[1], y))
      throw ParseError(lineno, "expected two integers 'x y'");
    pts.emplace_back(x, y);
  }
  if (expected < 0) throw ParseError(lineno, "missing point count");
  if (static_cast<long long>(pts.size()) != expected)
    throw ParseError(lineno, "expected " + std::to_string(expected) + " points, found " +
                                 std::to_string(pts.size()));
  return pts;
}

inline PointSet read_point_set(std::istream& in) {
  const auto raw = parse_points(in);
  return validate_point_set(raw);
}

inline PointSet read_point_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open " + path);
  return read_point_set(f);
}

inline PointSet parse_point_string(const std::string& text) {
  std::istringstream in(text);
  return read_point_set(in);
}

inline void write_points(std::ostream& out, const std::vector<std::pair<Coord, Coord>>& pts) {
  out << pts.size() << '\n';
  for (auto [x, y] : pts) out << x << ' ' << y << '\n';
}

}  // namespace planecount
