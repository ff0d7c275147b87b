#pragma once

#include <optional>

#include "probmatch/geometry.hpp"
#include "probmatch/votes.hpp"

namespace probmatch {

/// Shape-derived quantities that enter a plan.
struct PlanConstants {
  double area_a = 0.0;
  double area_b = 0.0;
  double boundary_a = 0.0;  // boundary length of A
  double diameter_a = 0.0;
  /// Complexity constant of the vote-count bound: |B|^2 Δ^4/|A|^4 for
  /// translations, |B|^2 Δ^6 D^6/|A|^6 for rigid motions (divided by κ^6 or
  /// κ^8 in relative mode).
  double complexity = 0.0;
  /// Lipschitz constant of the vote density.
  double lipschitz = 0.0;
  /// True when `lipschitz` uses the upper bound |A|^2|B| for the unknown
  /// normaliser of the rm31 density, which makes it a lower estimate.
  bool lipschitz_is_bound = false;
  /// Volume of one delta-box: 4δ² or 8δ³.
  double mu_delta = 0.0;
};

struct MatchPlan {
  VoteMode mode = VoteMode::translation;
  double epsilon = 0.0;
  double tau = 0.0;
  std::optional<double> kappa;
  /// Relative-error plan: epsilon was replaced by epsilon * kappa.
  bool relative = false;
  double effective_epsilon = 0.0;
  double delta = 0.0;
  double eta = 0.0;
  /// N for translation/rmra, accepted votes M for rm31. Integral-valued; kept
  /// as a double because the bounds overflow 64-bit integers for small ε.
  double votes_needed = 0.0;
  /// rm31 only: acceptance lower bound p = (κ/4)^3 and raw attempt budget.
  std::optional<double> acceptance_bound;
  std::optional<double> attempts_budget;
  PlanConstants constants;
};

/// Density Lipschitz constants:
///   translation  √2 Δ / (|A||B|)
///   rmra         (√2 + 2πD) Δ / (|A||B|)
///   rm31         2 (√2 + 2πD) Δ min(|A|,|B|) / (|A|^2 |B|)   (bound, see PlanConstants)
double lipschitz_constant(VoteMode mode, const ShapeStats& a, const ShapeStats& b);

/// Lipschitz constant of the overlap area itself under rigid motions,
/// (√2 + 2πD) Δ, in area per unit of max-norm distance.
double overlap_lipschitz(const ShapeStats& a);

MatchPlan plan_translation(const ShapeStats& a, const ShapeStats& b, double epsilon, double tau);
MatchPlan plan_rmra(const ShapeStats& a, const ShapeStats& b, double epsilon, double tau);
/// Caller guarantees A has the smaller largest inscribed circle.
MatchPlan plan_rm31(const ShapeStats& a, const ShapeStats& b, double epsilon, double tau, double kappa);

/// Dispatches on mode. With `relative` set, plans for epsilon * kappa so the
/// error bound becomes epsilon times the optimal overlap; kappa is required
/// for rm31 and for relative plans.
MatchPlan make_plan(VoteMode mode, const ShapeStats& a, const ShapeStats& b, double epsilon, double tau,
                    std::optional<double> kappa = std::nullopt, bool relative = false);

/// Lower estimate of κ = π r² / |A| for the largest inscribed circle, found
/// by a grid search over the bounding box followed by local refinement.
double estimate_kappa(const TriangleSoup& a, int grid_resolution = 200);

/// Radius and centre of the largest inscribed circle found by estimate_kappa.
struct InscribedCircle {
  Point2 center = Point2::Zero();
  double radius = 0.0;
};
InscribedCircle largest_inscribed_circle(const TriangleSoup& a, int grid_resolution = 200);

}  // namespace probmatch
