#pragma once

#include <string>

#include "planecount/geom.hpp"

namespace fixtures {

inline planecount::PointSet p4c() { return planecount::validate_point_set({{0, 0}, {1, 4}, {2, 5}, {3, 1}}); }

inline planecount::PointSet p5i() {
  return planecount::validate_point_set({{0, 0}, {1, 4}, {2, 1}, {3, 5}, {4, -1}});
}

inline std::string data(const std::string& name) { return std::string(PLANECOUNT_DATA) + "/" + name; }

}  // namespace fixtures
