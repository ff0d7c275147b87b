#include "probmatch/planner.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace probmatch {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kPi = std::numbers::pi;

void check_unit_open(double v, const char* name) {
  if (!(v > 0.0 && v < 1.0)) throw std::invalid_argument(std::string(name) + " must lie in (0, 1)");
}

void check_kappa(double kappa) {
  if (!(kappa > 0.0 && kappa <= 1.0)) throw std::invalid_argument("kappa must lie in (0, 1]");
}

// sqrt(2) + 2 pi D: worst-case motion of a point of A per unit max-norm step.
double motion_factor(const ShapeStats& a) { return kSqrt2 + 2.0 * kPi * a.diameter; }

PlanConstants base_constants(const ShapeStats& a, const ShapeStats& b) {
  PlanConstants c;
  c.area_a = a.area;
  c.area_b = b.area;
  c.boundary_a = a.boundary_length;
  c.diameter_a = a.diameter;
  return c;
}

// Chernoff tail e^{-η²(N-offset)/16} <= target, together with the bound that
// dominates the union over arrangement vertices.
double votes_for(double eta, double log_term, double offset, double vertex_factor) {
  const double inv = 1.0 / (eta * eta);
  const double n = std::max(16.0 * inv * log_term + offset, vertex_factor * inv * std::log(vertex_factor * inv));
  // The concentration bound needs N > 6/η + 2.
  const double floor_n = std::floor(6.0 / eta + 2.0) + 1.0;
  return std::max(std::ceil(n), floor_n);
}

}  // namespace

double overlap_lipschitz(const ShapeStats& a) { return motion_factor(a) * a.boundary_length; }

double lipschitz_constant(VoteMode mode, const ShapeStats& a, const ShapeStats& b) {
  switch (mode) {
    case VoteMode::translation: return kSqrt2 * a.boundary_length / (a.area * b.area);
    case VoteMode::rmra: return motion_factor(a) * a.boundary_length / (a.area * b.area);
    case VoteMode::rm31:
      return 2.0 * motion_factor(a) * a.boundary_length * std::min(a.area, b.area) / (a.area * a.area * b.area);
  }
  return 0.0;
}

MatchPlan plan_translation(const ShapeStats& a, const ShapeStats& b, double epsilon, double tau) {
  check_unit_open(epsilon, "epsilon");
  check_unit_open(tau, "tau");
  MatchPlan p;
  p.mode = VoteMode::translation;
  p.epsilon = p.effective_epsilon = epsilon;
  p.tau = tau;
  const double A = a.area, B = b.area, L = a.boundary_length;
  p.delta = epsilon * A / (9.0 * kSqrt2 * L);
  p.eta = std::pow(epsilon, 3) * A * A / (243.0 * L * L * B);
  p.votes_needed = votes_for(p.eta, std::log(1.0 / tau), 2.0, 80.0);
  p.constants = base_constants(a, b);
  p.constants.complexity = B * B * std::pow(L, 4) / std::pow(A, 4);
  p.constants.lipschitz = lipschitz_constant(p.mode, a, b);
  p.constants.mu_delta = 4.0 * p.delta * p.delta;
  return p;
}

MatchPlan plan_rmra(const ShapeStats& a, const ShapeStats& b, double epsilon, double tau) {
  check_unit_open(epsilon, "epsilon");
  check_unit_open(tau, "tau");
  MatchPlan p;
  p.mode = VoteMode::rmra;
  p.epsilon = p.effective_epsilon = epsilon;
  p.tau = tau;
  const double A = a.area, B = b.area, L = a.boundary_length, K = motion_factor(a);
  p.delta = epsilon * A / (8.0 * K * L);
  p.eta = std::pow(epsilon, 4) * std::pow(A, 3) / (512.0 * std::pow(K, 3) * std::pow(L, 3) * B);
  p.votes_needed = votes_for(p.eta, std::log(1.0 / tau), 3.0, 112.0);
  p.constants = base_constants(a, b);
  p.constants.complexity = B * B * std::pow(L, 6) * std::pow(a.diameter, 6) / std::pow(A, 6);
  p.constants.lipschitz = lipschitz_constant(p.mode, a, b);
  p.constants.mu_delta = 8.0 * std::pow(p.delta, 3);
  return p;
}

MatchPlan plan_rm31(const ShapeStats& a, const ShapeStats& b, double epsilon, double tau, double kappa) {
  check_unit_open(epsilon, "epsilon");
  check_unit_open(tau, "tau");
  check_kappa(kappa);
  MatchPlan p;
  p.mode = VoteMode::rm31;
  p.epsilon = p.effective_epsilon = epsilon;
  p.tau = tau;
  p.kappa = kappa;
  const double A = a.area, B = b.area, L = a.boundary_length, K = motion_factor(a);
  p.delta = epsilon * A / (16.0 * K * L);
  p.eta = std::pow(epsilon, 4) * kappa * std::pow(A, 3) / (4096.0 * B * std::pow(K, 3) * std::pow(L, 3));
  p.votes_needed = votes_for(p.eta, std::log(2.0 / tau), 3.0, 112.0);
  const double accept = std::pow(kappa / 4.0, 3);
  p.acceptance_bound = accept;
  p.attempts_budget = std::ceil(std::max(2.0 * p.votes_needed / accept, 8.0 / (accept * accept) * std::log(4.0 / tau)));
  p.constants = base_constants(a, b);
  p.constants.complexity = B * B * std::pow(L, 6) * std::pow(a.diameter, 6) / std::pow(A, 6);
  p.constants.lipschitz = lipschitz_constant(p.mode, a, b);
  p.constants.lipschitz_is_bound = true;
  p.constants.mu_delta = 8.0 * std::pow(p.delta, 3);
  return p;
}

MatchPlan make_plan(VoteMode mode, const ShapeStats& a, const ShapeStats& b, double epsilon, double tau,
                    std::optional<double> kappa, bool relative) {
  check_unit_open(epsilon, "epsilon");
  if (relative || mode == VoteMode::rm31) {
    if (!kappa) throw std::invalid_argument("kappa is required for rm31 and relative plans");
    check_kappa(*kappa);
  }
  const double eps = relative ? epsilon * *kappa : epsilon;
  MatchPlan p;
  switch (mode) {
    case VoteMode::translation: p = plan_translation(a, b, eps, tau); break;
    case VoteMode::rmra: p = plan_rmra(a, b, eps, tau); break;
    case VoteMode::rm31: p = plan_rm31(a, b, eps, tau, *kappa); break;
  }
  p.epsilon = epsilon;
  p.effective_epsilon = eps;
  p.relative = relative;
  p.kappa = kappa;
  if (relative && mode == VoteMode::translation) p.constants.complexity /= std::pow(*kappa, 6);
  if (relative && mode == VoteMode::rmra) p.constants.complexity /= std::pow(*kappa, 8);
  return p;
}

// ---------------------------------------------------------------------------

namespace {

double distance_to_segment(const Point2& p, const Segment& s) {
  const Point2 d = s.b - s.a;
  const double len2 = d.squaredNorm();
  double t = len2 > 0.0 ? (p - s.a).dot(d) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return (s.a + t * d - p).norm();
}

double clearance(const TriangleSoup& soup, const std::vector<Segment>& edges, const Point2& p) {
  if (!soup.contains(p)) return -1.0;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& e : edges) best = std::min(best, distance_to_segment(p, e));
  return best;
}

bool circle_inside(const TriangleSoup& soup, const Point2& c, double r) {
  constexpr int kProbes = 64;
  if (!soup.contains(c)) return false;
  for (int i = 0; i < kProbes; ++i) {
    const double t = 2.0 * kPi * i / kProbes;
    for (double f : {0.5, 1.0})
      if (!soup.contains(c + f * r * Point2(std::cos(t), std::sin(t)))) return false;
  }
  return true;
}

}  // namespace

InscribedCircle largest_inscribed_circle(const TriangleSoup& a, int grid_resolution) {
  if (grid_resolution < 1) throw std::invalid_argument("grid resolution must be positive");
  const auto edges = boundary_edges(a);
  const Box2& box = a.bounds();
  const Point2 step = box.sizes() / static_cast<double>(grid_resolution);

  InscribedCircle best;
  best.radius = -1.0;
  for (int i = 0; i < grid_resolution; ++i) {
    for (int j = 0; j < grid_resolution; ++j) {
      const Point2 p = box.min() + Point2((i + 0.5) * step.x(), (j + 0.5) * step.y());
      const double r = clearance(a, edges, p);
      if (r > best.radius) best = {p, r};
    }
  }
  if (best.radius < 0.0) {
    // Every probe missed the shape (very thin slivers); fall back to a triangle centroid.
    const auto& t = a.triangles().front();
    best.center = (t[0] + t[1] + t[2]) / 3.0;
    best.radius = clearance(a, edges, best.center);
  }

  // Compass search on the clearance function.
  double h = std::max(step.x(), step.y());
  const double stop = 1e-10 * std::max(1.0, box.sizes().maxCoeff());
  const std::array<Point2, 8> dirs{Point2(1, 0),  Point2(-1, 0), Point2(0, 1),   Point2(0, -1),
                                   Point2(1, 1),  Point2(1, -1), Point2(-1, 1), Point2(-1, -1)};
  while (h > stop) {
    bool moved = false;
    for (const auto& d : dirs) {
      const Point2 q = best.center + h * d;
      const double r = clearance(a, edges, q);
      if (r > best.radius) {
        best = {q, r};
        moved = true;
      }
    }
    if (!moved) h *= 0.5;
  }

  for (int k = 0; k < 100 && !circle_inside(a, best.center, best.radius * (1.0 - 1e-9)); ++k) best.radius *= 0.99;
  best.radius = std::max(0.0, best.radius);
  return best;
}

double estimate_kappa(const TriangleSoup& a, int grid_resolution) {
  const InscribedCircle c = largest_inscribed_circle(a, grid_resolution);
  return std::min(1.0, kPi * c.radius * c.radius / a.area());
}

}  // namespace probmatch
