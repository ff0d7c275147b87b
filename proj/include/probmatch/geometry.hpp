#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Geometry>

namespace probmatch {

using Point2 = Eigen::Vector2d;
using Box2 = Eigen::AlignedBox2d;

/// Thrown for input that cannot form a valid shape.
class ShapeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Comparison slack for areas and lengths, in shape units.
inline constexpr double kGeomTolerance = 1e-9;

/// Twice the signed area of (a, b, c); positive for a counterclockwise turn.
inline double orient2d(const Point2& a, const Point2& b, const Point2& c) {
  return (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
}

/// Wraps an angle given in revolutions into [-1/2, 1/2).
double wrap_angle(double revolutions);

/// Counterclockwise rotation by 2*pi*revolutions.
Eigen::Matrix2d rotation(double revolutions);

class Triangle {
 public:
  /// Throws ShapeError unless the vertices are finite and counterclockwise
  /// with strictly positive area.
  Triangle(const Point2& a, const Point2& b, const Point2& c);

  const Point2& operator[](std::size_t i) const { return v_[i]; }
  const std::array<Point2, 3>& vertices() const { return v_; }
  double area() const { return 0.5 * orient2d(v_[0], v_[1], v_[2]); }
  Box2 bounds() const;

  /// Boundary-inclusive point test.
  bool contains(const Point2& p) const;
  /// True only for points off all three edge lines.
  bool contains_strictly(const Point2& p) const;

 private:
  std::array<Point2, 3> v_;
};

/// A shape given as interior-disjoint counterclockwise triangles.
///
/// Construction checks non-emptiness and per-triangle validity and builds a
/// uniform-grid locator used by contains(). Interior-disjointness is checked
/// separately (see validate_interior_disjoint in sampling.hpp) because the
/// check is randomized.
class TriangleSoup {
 public:
  explicit TriangleSoup(std::vector<Triangle> triangles);

  const std::vector<Triangle>& triangles() const { return triangles_; }
  std::size_t size() const { return triangles_.size(); }
  double area() const { return area_; }
  const Box2& bounds() const { return bounds_; }

  /// Boundary-inclusive membership.
  bool contains(const Point2& p) const;
  /// Number of triangles whose interior contains p.
  std::size_t interior_multiplicity(const Point2& p) const;

  /// Triangles whose bounding box meets `box`, each reported once.
  std::vector<std::size_t> candidates(const Box2& box) const;

 private:
  std::size_t cell_of(double v, double lo, double width, std::size_t n) const;

  std::vector<Triangle> triangles_;
  double area_ = 0.0;
  Box2 bounds_;
  // Locator: row-major grid of triangle indices.
  std::size_t nx_ = 1, ny_ = 1;
  double cell_w_ = 1.0, cell_h_ = 1.0;
  std::vector<std::vector<std::uint32_t>> cells_;
};

/// Pure translation x -> x + offset.
struct Translation {
  Point2 offset = Point2::Zero();

  Translation() = default;
  explicit Translation(const Point2& t);
  Translation(double tx, double ty) : Translation(Point2(tx, ty)) {}
};

/// Rigid motion x -> R(alpha) x + offset with alpha in revolutions.
/// The angle is wrapped into [-1/2, 1/2) on construction.
struct RigidMotion {
  double alpha = 0.0;
  Point2 offset = Point2::Zero();

  RigidMotion() = default;
  RigidMotion(double alpha, const Point2& t);
  RigidMotion(double alpha, double tx, double ty) : RigidMotion(alpha, Point2(tx, ty)) {}
};

using Transform = std::variant<Translation, RigidMotion>;

Point2 apply(const Translation& t, const Point2& p);
Point2 apply(const RigidMotion& r, const Point2& p);
Point2 apply(const Transform& t, const Point2& p);

Translation invert(const Translation& t);
RigidMotion invert(const RigidMotion& r);
Transform invert(const Transform& t);

/// Image of every triangle of `soup` under `t`.
TriangleSoup transformed(const TriangleSoup& soup, const Transform& t);

/// Area of the convex polygon t1 ∩ t2.
double intersection_area(const Triangle& t1, const Triangle& t2);

/// |t(A) ∩ B| by pairwise triangle clipping.
double overlap_area(const TriangleSoup& a, const TriangleSoup& b, const Transform& t);

/// |t(A) Δ B| = |A| + |B| - 2 |t(A) ∩ B|.
double symmetric_difference_area(const TriangleSoup& a, const TriangleSoup& b,
                                 const Transform& t);

struct Segment {
  Point2 a, b;
};

struct ShapeStats {
  double area = 0.0;
  double boundary_length = 0.0;
  double diameter = 0.0;
  Box2 bbox;
};

/// Edges that occur exactly once across the soup. Throws ShapeError when an
/// edge is shared by more than two triangles.
std::vector<Segment> boundary_edges(const TriangleSoup& soup);

ShapeStats shape_stats(const TriangleSoup& soup);

inline bool contains(const TriangleSoup& soup, const Point2& p) { return soup.contains(p); }

}  // namespace probmatch
