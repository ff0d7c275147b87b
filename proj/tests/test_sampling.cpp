#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "fixtures.hpp"
#include "probmatch/sampling.hpp"

using namespace probmatch;
using doctest::Approx;

TEST_CASE("cumulative areas") {
  const TriangleSoup soup({Triangle({0, 0}, {1, 0}, {0, 1}), Triangle({2, 0}, {4, 0}, {2, 1}),
                           Triangle({5, 0}, {6, 0}, {5, 3})});
  const AreaIndex idx(soup);
  const auto& c = idx.cumulative();
  REQUIRE(c.size() == 3);
  CHECK(c[0] == Approx(0.5 / 3.0));
  CHECK(c[1] == Approx(1.5 / 3.0));
  CHECK(c[2] == 1.0);
  CHECK(idx.pick(0.0) == 0);
  CHECK(idx.pick(0.2) == 1);
  CHECK(idx.pick(0.9999) == 2);
}

TEST_CASE("triangle frequencies follow areas") {
  const TriangleSoup soup({Triangle({0, 0}, {1, 0}, {0, 1}), Triangle({2, 0}, {4, 0}, {2, 1}),
                           Triangle({5, 0}, {6, 0}, {5, 3})});
  const AreaIndex idx(soup);
  RandomSource rng(3, 0);
  std::vector<double> hits(3, 0.0);
  constexpr int kN = 300'000;
  for (int i = 0; i < kN; ++i) {
    std::size_t t = 0;
    const Point2 p = sample_point(idx, rng, t);
    CHECK_MESSAGE(soup.triangles()[t].contains(p), "sample outside its triangle");
    hits[t] += 1.0;
  }
  const double expected[] = {kN / 6.0, kN / 3.0, kN / 2.0};
  double chi2 = 0.0;
  for (int k = 0; k < 3; ++k) chi2 += std::pow(hits[k] - expected[k], 2) / expected[k];
  CHECK(chi2 < 13.8);  // 2 dof, p = 0.001
}

TEST_CASE("points are uniform over the unit square") {
  const auto sq = fixtures::unit_square();
  const AreaIndex idx(sq);
  RandomSource rng(4, 0);
  constexpr int kBins = 10, kN = 500'000;
  std::vector<double> bins(kBins * kBins, 0.0);
  for (int i = 0; i < kN; ++i) {
    const Point2 p = sample_point(idx, rng);
    const int bx = std::min(kBins - 1, static_cast<int>(p.x() * kBins));
    const int by = std::min(kBins - 1, static_cast<int>(p.y() * kBins));
    bins[by * kBins + bx] += 1.0;
  }
  const double e = static_cast<double>(kN) / bins.size();
  double chi2 = 0.0;
  for (double b : bins) chi2 += (b - e) * (b - e) / e;
  CHECK(chi2 < 148.2);  // 99 dof, p = 0.001
}

TEST_CASE("three uniforms per point, reproducible") {
  const auto l = fixtures::l_shape();
  const AreaIndex idx(l);
  RandomSource a(7, 11), b(7, 11);
  for (int i = 0; i < 100; ++i) CHECK(sample_point(idx, a) == sample_point(idx, b));
  CHECK(a.draws() == 300);
}

TEST_CASE("substreams are uncorrelated") {
  RandomSource a(1, 0), b(1, 1);
  constexpr int kN = 200'000;
  double sab = 0, sa = 0, sb = 0, saa = 0, sbb = 0;
  for (int i = 0; i < kN; ++i) {
    const double x = a.uniform(), y = b.uniform();
    sab += x * y; sa += x; sb += y; saa += x * x; sbb += y * y;
  }
  const double cov = sab / kN - sa / kN * sb / kN;
  const double corr = cov / std::sqrt((saa / kN - sa * sa / kN / kN) * (sbb / kN - sb * sb / kN / kN));
  CHECK(std::abs(corr) < 4.0 / std::sqrt(kN));
  CHECK(RandomSource(1, 0).next_u64() != RandomSource(2, 0).next_u64());
}

TEST_CASE("uniform stays in [0, 1)") {
  RandomSource rng(0, 0);
  for (int i = 0; i < 100'000; ++i) {
    const double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("overlapping triangles are detected") {
  CHECK_NOTHROW(validate_interior_disjoint(fixtures::grid_soup(4)));
  const TriangleSoup overlapping({Triangle({0, 0}, {1, 0}, {0, 1}), Triangle({0, 0}, {1, 0}, {1, 1})});
  CHECK_THROWS_AS(validate_interior_disjoint(overlapping), ShapeError);
}
