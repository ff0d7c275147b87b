#pragma once

// Shapes and generators shared by the test binaries.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "probmatch/geometry.hpp"
#include "probmatch/random.hpp"

namespace fixtures {

using probmatch::Point2;
using probmatch::Triangle;
using probmatch::TriangleSoup;

inline TriangleSoup rectangle(double x0, double y0, double x1, double y1) {
  return TriangleSoup({Triangle({x0, y0}, {x1, y0}, {x1, y1}), Triangle({x0, y0}, {x1, y1}, {x0, y1})});
}

inline TriangleSoup unit_square() { return rectangle(0, 0, 1, 1); }
inline TriangleSoup centered_square() { return rectangle(-0.5, -0.5, 0.5, 0.5); }

/// L-shape [0,2]x[0,2] minus [1,2]x[1,2], as 4 triangles with shared edges.
inline TriangleSoup l_shape() {
  return TriangleSoup({Triangle({0, 0}, {1, 0}, {1, 1}), Triangle({0, 0}, {1, 1}, {0, 1}),
                       Triangle({1, 0}, {2, 0}, {2, 1}), Triangle({1, 0}, {2, 1}, {1, 1}),
                       Triangle({0, 1}, {1, 1}, {1, 2}), Triangle({0, 1}, {1, 2}, {0, 2})});
}

/// Regular n-gon of circumradius r around c, fan-triangulated from the centre.
inline TriangleSoup regular_polygon(int n, double r = 1.0, Point2 c = Point2::Zero()) {
  std::vector<Triangle> tris;
  for (int i = 0; i < n; ++i) {
    const double t0 = 2.0 * std::numbers::pi * i / n;
    const double t1 = 2.0 * std::numbers::pi * ((i + 1) % n) / n;
    tris.emplace_back(c, c + r * Point2(std::cos(t0), std::sin(t0)), c + r * Point2(std::cos(t1), std::sin(t1)));
  }
  return TriangleSoup(std::move(tris));
}

inline TriangleSoup transformed(const TriangleSoup& s, const probmatch::Transform& t) {
  return probmatch::transformed(s, t);
}

/// Random convex polygon: sorted random angles on a jittered circle.
inline std::vector<Point2> random_convex_ring(probmatch::RandomSource& rng, int n, Point2 center, double radius) {
  std::vector<double> angles(n);
  for (auto& a : angles) a = 2.0 * std::numbers::pi * rng.uniform();
  std::sort(angles.begin(), angles.end());
  std::vector<Point2> ring;
  for (double a : angles) ring.push_back(center + radius * Point2(std::cos(a), std::sin(a)));
  return ring;
}

/// Fan triangulation of a convex counterclockwise ring (drops degenerate fans).
inline TriangleSoup fan(const std::vector<Point2>& ring) {
  std::vector<Triangle> tris;
  for (std::size_t i = 1; i + 1 < ring.size(); ++i)
    if (probmatch::orient2d(ring[0], ring[i], ring[i + 1]) > 1e-12) tris.emplace_back(ring[0], ring[i], ring[i + 1]);
  return TriangleSoup(std::move(tris));
}

/// Random soup: a few disjoint convex blobs placed in separate cells.
inline TriangleSoup random_soup(probmatch::RandomSource& rng) {
  const int blobs = 1 + static_cast<int>(rng.uniform() * 3);
  std::vector<Triangle> tris;
  for (int k = 0; k < blobs; ++k) {
    const Point2 c(1.2 * k + 0.6 * rng.uniform(), 0.6 * rng.uniform());
    const int n = 5 + static_cast<int>(rng.uniform() * 8);
    const auto part = fan(random_convex_ring(rng, n, c, 0.25 + 0.25 * rng.uniform()));
    tris.insert(tris.end(), part.triangles().begin(), part.triangles().end());
  }
  return TriangleSoup(std::move(tris));
}

/// n x n grid of unit cells over [0,1]^2, two triangles per cell.
inline TriangleSoup grid_soup(int n) {
  std::vector<Triangle> tris;
  const double h = 1.0 / n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double x0 = i * h, y0 = j * h, x1 = (i + 1) * h, y1 = (j + 1) * h;
      tris.emplace_back(Point2(x0, y0), Point2(x1, y0), Point2(x1, y1));
      tris.emplace_back(Point2(x0, y0), Point2(x1, y1), Point2(x0, y1));
    }
  return TriangleSoup(std::move(tris));
}

}  // namespace fixtures
