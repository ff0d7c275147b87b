#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <string>

#include "fixtures.hpp"
#include "probmatch/shape_io.hpp"

using namespace probmatch;
using doctest::Approx;
using nlohmann::json;

namespace {

std::string data(const char* name) { return std::string(PROBMATCH_TEST_DATA) + "/" + name; }

}  // namespace

TEST_CASE("triangulate simple polygons") {
  const TriangleSoup sq = triangulate(PolygonWithHoles{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}});
  CHECK(sq.size() == 2);
  CHECK(sq.area() == Approx(1.0));

  const TriangleSoup l = triangulate(PolygonWithHoles{{{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}});
  CHECK(l.size() == 4);
  CHECK(l.area() == Approx(3.0));
  CHECK(shape_stats(l).boundary_length == Approx(8.0));
}

TEST_CASE("triangulate with a hole") {
  const PolygonWithHoles p{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{0.25, 0.25}, {0.25, 0.75}, {0.75, 0.75}, {0.75, 0.25}}};
  const TriangleSoup s = triangulate(p);
  CHECK(s.area() == Approx(0.75));
  CHECK(s.size() == 8);
  CHECK_FALSE(s.contains({0.5, 0.5}));
  CHECK(s.contains({0.1, 0.5}));
  CHECK(shape_stats(s).boundary_length == Approx(6.0));
}

TEST_CASE("triangulate a random convex polygon preserves area") {
  RandomSource rng(5, 0);
  for (int k = 0; k < 20; ++k) {
    const auto ring = fixtures::random_convex_ring(rng, 12, Point2(0, 0), 1.0);
    double shoelace = 0.0;
    for (std::size_t i = 0; i < ring.size(); ++i) {
      const auto& p = ring[i];
      const auto& q = ring[(i + 1) % ring.size()];
      shoelace += p.x() * q.y() - q.x() * p.y();
    }
    CHECK(triangulate(PolygonWithHoles{ring}).area() == Approx(0.5 * shoelace).epsilon(1e-12));
  }
}

TEST_CASE("ring errors name the ring") {
  auto message = [](const PolygonWithHoles& p) {
    try {
      triangulate(p);
    } catch (const ShapeError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message({{{0, 0}, {0, 1}, {1, 1}, {1, 0}}}).find("ring 0") != std::string::npos);
  CHECK(message({{{0, 0}, {1, 1}, {1, 0}, {0, 1}}}).find("ring 0") != std::string::npos);
  CHECK(message({{{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{0.2, 0.2}, {0.8, 0.2}, {0.8, 0.8}}}).find("ring 1") !=
        std::string::npos);
  CHECK(message({{{0, 0}, {1, 0}}}).find("fewer than 3") != std::string::npos);
}

TEST_CASE("json formats") {
  const TriangleSoup tri = shape_from_json(json::parse(R"({"triangles": [[[0,0],[1,0],[0,1]]]})"));
  CHECK(tri.area() == Approx(0.5));
  // Clockwise triangles are reoriented.
  CHECK(shape_from_json(json::parse(R"({"triangles": [[[0,0],[0,1],[1,0]]]})")).area() == Approx(0.5));
  const TriangleSoup one = shape_from_json(json::parse(R"({"polygons": [[[0,0],[1,0],[1,1],[0,1]]]})"));
  const TriangleSoup nested =
      shape_from_json(json::parse(R"({"polygons": [[[[0,0],[1,0],[1,1],[0,1]]], [[[2,0],[3,0],[3,1]]]]})"));
  CHECK(one.area() == Approx(1.0));
  CHECK(nested.area() == Approx(1.5));

  const TriangleSoup round = shape_from_json(shape_to_json(nested));
  CHECK(round.size() == nested.size());
  CHECK(round.area() == Approx(nested.area()));
}

TEST_CASE("json errors") {
  CHECK_THROWS_AS(shape_from_json(json::parse("[]")), ShapeError);
  CHECK_THROWS_AS(shape_from_json(json::parse("{}")), ShapeError);
  CHECK_THROWS_AS(shape_from_json(json::parse(R"({"triangles": [[[0,0],[1,0]]]})")), ShapeError);
  CHECK_THROWS_AS(shape_from_json(json::parse(R"({"triangles": [[[0,0],[1,0],[2,0]]]})")), ShapeError);
  CHECK_THROWS_AS(shape_from_json(json::parse(R"({"triangles": [[[0,0],[1,0],["a",0]]]})")), ShapeError);
  CHECK_THROWS_AS(shape_from_json(json::parse(R"({"triangles": [[[0,0],[1,0],[0,1]],[[0,0],[1,0],[1,1]]]})")),
                  ShapeError);
  CHECK_THROWS_AS(load_shape("/nonexistent/shape.json"), ShapeError);
}

TEST_CASE("bundled data files") {
  CHECK(load_shape(data("unit_square.json")).area() == Approx(1.0));
  CHECK(load_shape(data("square_shifted.json")).bounds().min().x() == Approx(0.3));
  CHECK(load_shape(data("square_with_hole.json")).area() == Approx(0.75));
  CHECK(load_shape(data("l_shape.json")).area() == Approx(3.0));
}
