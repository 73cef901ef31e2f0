#include "entprobe/hull.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace entprobe::hull {

namespace {

// z-component of (a - o) x (b - o); positive for a counter-clockwise turn.
double cross(Point o, Point a, Point b) {
  return (a.real() - o.real()) * (b.imag() - o.imag()) -
         (a.imag() - o.imag()) * (b.real() - o.real());
}

bool lex_less(Point a, Point b) {
  return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
}

// Parameter t in [0, 1] of the point of segment [a, b] closest to the origin.
double segment_parameter(Point a, Point b) {
  const Point ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return 0.0;
  const double t = -(a.real() * ab.real() + a.imag() * ab.imag()) / len2;
  return std::clamp(t, 0.0, 1.0);
}

}  // namespace

std::vector<Point> convex_hull(std::vector<Point> points) {
  std::sort(points.begin(), points.end(), lex_less);
  points.erase(std::unique(points.begin(), points.end()), points.end());
  const std::size_t n = points.size();
  if (n <= 2) return points;

  std::vector<Point> h(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], points[i]) <= 0) --k;
    h[k++] = points[i];
  }
  for (std::size_t i = n - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], points[i]) <= 0) --k;
    h[k++] = points[i];
  }
  h.resize(k - 1);
  return h;
}

bool contains_origin(std::span<const Point> hull) {
  const Point origin{0.0, 0.0};
  switch (hull.size()) {
    case 0:
      return false;
    case 1:
      return std::abs(hull[0]) <= kGeometryTolerance;
    case 2: {
      const double t = segment_parameter(hull[0], hull[1]);
      return std::abs(hull[0] + t * (hull[1] - hull[0])) <= kGeometryTolerance;
    }
    default:
      for (std::size_t i = 0; i < hull.size(); ++i) {
        const Point a = hull[i];
        const Point b = hull[(i + 1) % hull.size()];
        if (cross(a, b, origin) < -kGeometryTolerance * std::abs(b - a)) return false;
      }
      return true;
  }
}

Closest closest_to_origin(std::span<const Point> hull) {
  Closest best;
  if (hull.empty()) return best;
  if (hull.size() == 1) {
    best.point = hull[0];
    best.distance = std::abs(hull[0]);
    best.weights = {{0, 1.0}};
    return best;
  }

  if (contains_origin(hull)) {
    best.point = {0.0, 0.0};
    best.distance = 0.0;
    if (hull.size() == 2) {
      const double t = segment_parameter(hull[0], hull[1]);
      best.weights = {{0, 1.0 - t}, {1, t}};
      return best;
    }
    // Fan triangulation from vertex 0; barycentric weights of the origin.
    for (std::size_t i = 1; i + 1 < hull.size(); ++i) {
      const Point a = hull[0], b = hull[i], c = hull[i + 1];
      const double area = cross(a, b, c);
      const double wa = cross(b, c, {0.0, 0.0}) / area;
      const double wb = cross(c, a, {0.0, 0.0}) / area;
      const double wc = 1.0 - wa - wb;
      const double slack = -kGeometryTolerance;
      if (wa >= slack && wb >= slack && wc >= slack) {
        const double sa = std::max(wa, 0.0), sb = std::max(wb, 0.0), sc = std::max(wc, 0.0);
        const double total = sa + sb + sc;
        best.weights = {{0, sa / total}, {i, sb / total}, {i + 1, sc / total}};
        return best;
      }
    }
    // Origin on the boundary but missed by the fan tolerance: fall through to
    // the edge search, which returns a (near-)zero distance.
  }

  best.distance = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const std::size_t j = (i + 1) % hull.size();
    if (hull.size() == 2 && i == 1) break;
    const double t = segment_parameter(hull[i], hull[j]);
    const Point p = hull[i] + t * (hull[j] - hull[i]);
    const double dist = std::abs(p);
    if (dist < best.distance) {
      best.distance = dist;
      best.point = p;
      best.weights = {{i, 1.0 - t}, {j, t}};
    }
  }
  return best;
}

}  // namespace entprobe::hull
