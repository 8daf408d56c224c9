#pragma once

#include <array>
#include <vector>

#include "gauss_neumann/geometry.hpp"

namespace gauss_neumann::detail {

struct Triangulation {
    std::vector<Point> points;
    std::vector<std::array<int, 3>> triangles;
};

/// Delaunay triangulation of `points` whose convex hull is `hull`
/// (counterclockwise, strictly convex). Points on hull edges are allowed;
/// the first hull.size() entries of the result are the hull corners.
Triangulation delaunay(const std::vector<Point>& hull, const std::vector<Point>& points);

} // namespace gauss_neumann::detail
