#pragma once

#include <string>

#include "holescope/geom.hpp"

namespace holescope::io {

// Round-trip-safe decimal rendering (17 significant digits).
std::string format_double(double x);

// CSV point files: header "x1,...,xd", one row per point.
void write_points_csv(const std::string& path, const PointSet& ps);
PointSet read_points_csv(const std::string& path);

}  // namespace holescope::io
