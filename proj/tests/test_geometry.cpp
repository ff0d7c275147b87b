#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "fixtures.hpp"
#include "probmatch/geometry.hpp"
#include "probmatch/oracle.hpp"

using namespace probmatch;
using doctest::Approx;

TEST_CASE("triangle rejects clockwise, degenerate and non-finite input") {
  CHECK_THROWS_AS(Triangle({0, 0}, {0, 1}, {1, 0}), ShapeError);
  CHECK_THROWS_AS(Triangle({0, 0}, {1, 1}, {2, 2}), ShapeError);
  CHECK_THROWS_AS(Triangle({0, 0}, {1, 0}, {0, NAN}), ShapeError);
  CHECK_NOTHROW(Triangle({0, 0}, {1, 0}, {0, 1}));
}

TEST_CASE("triangle containment") {
  const Triangle t({0, 0}, {1, 0}, {0, 1});
  CHECK(t.contains({0.25, 0.25}));
  CHECK(t.contains({0.5, 0.5}));
  CHECK_FALSE(t.contains_strictly({0.5, 0.5}));
  CHECK(t.contains_strictly({0.2, 0.2}));
  CHECK_FALSE(t.contains({0.6, 0.6}));
}

TEST_CASE("wrap_angle lands in [-1/2, 1/2)") {
  CHECK(wrap_angle(0.5) == Approx(-0.5));
  CHECK(wrap_angle(-0.5) == Approx(-0.5));
  CHECK(wrap_angle(1.25) == Approx(0.25));
  CHECK(wrap_angle(-0.75) == Approx(0.25));
  for (double a = -3.0; a < 3.0; a += 0.0137) {
    const double w = wrap_angle(a);
    CHECK(w >= -0.5);
    CHECK(w < 0.5);
    CHECK(std::abs(std::remainder(w - a, 1.0)) < 1e-12);
  }
}

TEST_CASE("intersection of two triangles") {
  const Triangle a({0, 0}, {1, 0}, {0, 1});
  CHECK(intersection_area(a, a) == Approx(0.5));
  const Triangle b({0, 0}, {1, 0}, {1, 1});
  CHECK(intersection_area(a, b) == Approx(0.25));
  const Triangle far({5, 5}, {6, 5}, {5, 6});
  CHECK(intersection_area(a, far) == 0.0);
}

TEST_CASE("overlap of squares") {
  const auto sq = fixtures::unit_square();
  CHECK(overlap_area(sq, sq, Translation()) == Approx(1.0));
  CHECK(overlap_area(sq, sq, Translation(0.3, 0.2)) == Approx(0.56));
  CHECK(overlap_area(sq, sq, Translation(1.5, 0.0)) == 0.0);
  CHECK(symmetric_difference_area(sq, sq, Translation(0.5, 0.0)) == Approx(1.0));

  // Eighth turn of a centred square against itself: a regular octagon.
  const auto c = fixtures::centered_square();
  CHECK(overlap_area(c, c, RigidMotion(0.125, 0, 0)) == Approx(2.0 * (std::sqrt(2.0) - 1.0)).epsilon(1e-12));
  RandomSource rng(1, 0);
  const McEstimate mc = mc_overlap(c, c, RigidMotion(0.125, 0, 0), 400'000, rng);
  CHECK(std::abs(mc.estimate - 0.8284271) < 4.0 * mc.sigma);
}

TEST_CASE("overlap is bounded and symmetric") {
  RandomSource rng(2, 0);
  for (int k = 0; k < 30; ++k) {
    const auto a = fixtures::random_soup(rng);
    const auto b = fixtures::random_soup(rng);
    const RigidMotion r(rng.uniform() - 0.5, rng.uniform(), rng.uniform() - 0.5);
    const double f = overlap_area(a, b, r);
    CHECK(f >= 0.0);
    CHECK(f <= std::min(a.area(), b.area()) + kGeomTolerance);
    CHECK(f == Approx(overlap_area(b, a, invert(Transform(r)))).epsilon(1e-9));
    CHECK(overlap_area(transformed(a, r), b, Translation()) == Approx(f).epsilon(1e-9));
  }
}

TEST_CASE("invert composes to identity") {
  const RigidMotion r(0.3, 1.0, -2.0);
  const Point2 p(0.7, -0.4);
  const Point2 q = probmatch::apply(invert(r), probmatch::apply(r, p));
  CHECK((q - p).norm() < 1e-12);
  const Translation t(0.5, 0.25);
  CHECK((probmatch::apply(invert(t), probmatch::apply(t, p)) - p).norm() < 1e-15);
}

TEST_CASE("shape statistics") {
  const ShapeStats sq = shape_stats(fixtures::unit_square());
  CHECK(sq.area == Approx(1.0));
  CHECK(sq.boundary_length == Approx(4.0));
  CHECK(sq.diameter == Approx(std::sqrt(2.0)));

  const ShapeStats l = shape_stats(fixtures::l_shape());
  CHECK(l.area == Approx(3.0));
  CHECK(l.boundary_length == Approx(8.0));
  CHECK(l.diameter == Approx(std::sqrt(8.0)));

  // Regular 64-gon, closed forms for area, perimeter and width.
  const int n = 64;
  const ShapeStats g = shape_stats(fixtures::regular_polygon(n));
  CHECK(g.area == Approx(0.5 * n * std::sin(2.0 * std::numbers::pi / n)).epsilon(1e-12));
  CHECK(g.boundary_length == Approx(2.0 * n * std::sin(std::numbers::pi / n)).epsilon(1e-12));
  CHECK(g.diameter == Approx(2.0).epsilon(1e-12));
}

TEST_CASE("boundary edges cancel shared interior edges") {
  CHECK(boundary_edges(fixtures::unit_square()).size() == 4);
  CHECK(boundary_edges(fixtures::grid_soup(5)).size() == 20);
  const TriangleSoup fan3({Triangle({0, 0}, {1, 0}, {0, 1}), Triangle({0, 0}, {1, 0}, {0.5, 0.2}),
                           Triangle({0, 0}, {1, 0}, {0.5, 2})});
  CHECK_THROWS_AS(boundary_edges(fan3), ShapeError);
}

TEST_CASE("soup membership and locator") {
  const auto l = fixtures::l_shape();
  CHECK(l.contains({0.5, 1.5}));
  CHECK(l.contains({1.0, 1.0}));
  CHECK_FALSE(l.contains({1.5, 1.5}));
  CHECK(l.interior_multiplicity({0.3, 0.1}) == 1);
  CHECK(l.interior_multiplicity({1.5, 1.5}) == 0);
  CHECK(l.candidates(Box2(Point2(5, 5), Point2(6, 6))).empty());
  CHECK(l.candidates(l.bounds()).size() == l.size());
  CHECK_THROWS_AS(TriangleSoup({}), ShapeError);
}
