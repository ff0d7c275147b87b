#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "fixtures.hpp"
#include "probmatch/planner.hpp"

using namespace probmatch;
using doctest::Approx;

namespace {

const ShapeStats kSquare = shape_stats(fixtures::unit_square());

}  // namespace

TEST_CASE("translation plan on unit squares") {
  const MatchPlan p = plan_translation(kSquare, kSquare, 0.1, 0.1);
  CHECK(p.delta == Approx(0.1 / (36.0 * std::sqrt(2.0))));
  CHECK(p.eta == Approx(1e-3 / (243.0 * 16.0)));
  CHECK(p.constants.mu_delta == Approx(4.0 * p.delta * p.delta));
  CHECK(p.constants.complexity == Approx(256.0));
  CHECK_FALSE(p.acceptance_bound.has_value());
}

TEST_CASE("rmra plan on unit squares") {
  const MatchPlan p = plan_rmra(kSquare, kSquare, 0.1, 0.1);
  const double K = std::sqrt(2.0) + 2.0 * std::numbers::pi * std::sqrt(2.0);
  CHECK(p.delta == Approx(0.1 / (32.0 * K)).epsilon(1e-14));
  CHECK(p.delta == Approx(3.03401e-4).epsilon(1e-5));
  CHECK(p.constants.mu_delta == Approx(8.0 * std::pow(p.delta, 3)));
}

TEST_CASE("rm31 plan carries the acceptance bound") {
  const double kappa = std::numbers::pi / 4.0;
  const MatchPlan p = plan_rm31(kSquare, kSquare, 0.1, 0.1, kappa);
  REQUIRE(p.acceptance_bound);
  CHECK(*p.acceptance_bound == Approx(std::pow(kappa / 4.0, 3)));
  REQUIRE(p.attempts_budget);
  CHECK(*p.attempts_budget >= 2.0 * p.votes_needed / *p.acceptance_bound);
  CHECK(p.constants.lipschitz_is_bound);
}

TEST_CASE("votes grow as epsilon and tau shrink") {
  for (VoteMode m : {VoteMode::translation, VoteMode::rmra, VoteMode::rm31}) {
    double prev_n = 0.0, prev_delta = 1.0;
    for (double eps : {0.4, 0.2, 0.1, 0.05}) {
      const MatchPlan p = make_plan(m, kSquare, kSquare, eps, 0.1, 0.7);
      CHECK(p.votes_needed > prev_n);
      CHECK(p.delta < prev_delta);
      prev_n = p.votes_needed;
      prev_delta = p.delta;
    }
    CHECK(make_plan(m, kSquare, kSquare, 0.1, 0.01, 0.7).votes_needed >=
          make_plan(m, kSquare, kSquare, 0.1, 0.1, 0.7).votes_needed);
  }
}

TEST_CASE("votes are nonincreasing in epsilon and tau") {
  const double grid[] = {0.05, 0.1, 0.2, 0.4, 0.8};
  for (VoteMode m : {VoteMode::translation, VoteMode::rmra, VoteMode::rm31})
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) {
        const double n = make_plan(m, kSquare, kSquare, grid[i], grid[j], 0.7).votes_needed;
        if (i + 1 < 5) CHECK(make_plan(m, kSquare, kSquare, grid[i + 1], grid[j], 0.7).votes_needed <= n);
        if (j + 1 < 5) CHECK(make_plan(m, kSquare, kSquare, grid[i], grid[j + 1], 0.7).votes_needed <= n);
      }
}

TEST_CASE("the confidence term takes over for tiny tau") {
  const MatchPlan loose = plan_translation(kSquare, kSquare, 0.9, 0.1);
  const MatchPlan tight = plan_translation(kSquare, kSquare, 0.9, 1e-300);
  CHECK(tight.votes_needed > loose.votes_needed);
}

TEST_CASE("vote count satisfies N > 6/eta + 2 and is integral") {
  for (VoteMode m : {VoteMode::translation, VoteMode::rmra, VoteMode::rm31})
    for (double eps : {0.05, 0.5, 0.9}) {
      const MatchPlan p = make_plan(m, kSquare, kSquare, eps, 0.5, 0.7);
      CHECK(p.votes_needed > 6.0 / p.eta + 2.0);
      CHECK(p.votes_needed == std::floor(p.votes_needed));
    }
}

TEST_CASE("relative plans scale epsilon by kappa") {
  const MatchPlan abs = make_plan(VoteMode::rmra, kSquare, kSquare, 0.05, 0.1);
  const MatchPlan rel = make_plan(VoteMode::rmra, kSquare, kSquare, 0.1, 0.1, 0.5, true);
  CHECK(rel.relative);
  CHECK(rel.effective_epsilon == Approx(0.05));
  CHECK(rel.delta == Approx(abs.delta));
  CHECK(rel.constants.complexity == Approx(abs.constants.complexity / std::pow(0.5, 8)));
  CHECK_THROWS_AS(make_plan(VoteMode::rm31, kSquare, kSquare, 0.1, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(make_plan(VoteMode::translation, kSquare, kSquare, 0.1, 0.1, std::nullopt, true),
                  std::invalid_argument);
}

TEST_CASE("invalid parameters") {
  CHECK_THROWS_AS(plan_translation(kSquare, kSquare, 0.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(plan_translation(kSquare, kSquare, 0.1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(plan_rm31(kSquare, kSquare, 0.1, 0.1, 1.5), std::invalid_argument);
}

TEST_CASE("Lipschitz constants") {
  const double K = std::sqrt(2.0) + 2.0 * std::numbers::pi * std::sqrt(2.0);
  CHECK(overlap_lipschitz(kSquare) == Approx(4.0 * K));
  CHECK(lipschitz_constant(VoteMode::translation, kSquare, kSquare) == Approx(4.0 * std::sqrt(2.0)));
  CHECK(lipschitz_constant(VoteMode::rmra, kSquare, kSquare) == Approx(4.0 * K));
}

TEST_CASE("kappa estimates") {
  CHECK(estimate_kappa(fixtures::unit_square()) == Approx(std::numbers::pi / 4.0).epsilon(0.01));
  CHECK(estimate_kappa(fixtures::regular_polygon(64)) >= 0.99);
  CHECK(estimate_kappa(fixtures::rectangle(0, 0, 10, 1)) == Approx(std::numbers::pi / 40.0).epsilon(0.01));
  const InscribedCircle c = largest_inscribed_circle(fixtures::unit_square());
  CHECK(c.radius == Approx(0.5).epsilon(1e-6));
  CHECK((c.center - Point2(0.5, 0.5)).norm() < 1e-4);
  // L-shape: at least the radius-1/2 disk of one unit cell fits.
  const double l = estimate_kappa(fixtures::l_shape());
  CHECK(l >= std::numbers::pi * 0.25 / 3.0 - 1e-6);
}
