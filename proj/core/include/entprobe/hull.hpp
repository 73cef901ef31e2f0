#pragma once

#include <complex>
#include <span>
#include <vector>

namespace entprobe::hull {

using Point = std::complex<double>;

// Collinearity / containment slack for points of modulus ~1.
inline constexpr double kGeometryTolerance = 1e-12;

/// Convex hull in counter-clockwise order without repeating the first vertex
/// (Andrew's monotone chain). Collinear boundary points are dropped.
std::vector<Point> convex_hull(std::vector<Point> points);

/// True when the origin lies inside or on the boundary of the hull.
bool contains_origin(std::span<const Point> hull);

struct Closest {
  Point point;
  double distance = 0.0;
  // Convex weights of the hull vertices realizing `point`; at most three
  // entries are non-zero.
  std::vector<std::pair<std::size_t, double>> weights;
};

/// Closest point of the hull to the origin together with a convex
/// decomposition over at most three hull vertices.
Closest closest_to_origin(std::span<const Point> hull);

}  // namespace entprobe::hull
