#pragma once

#include <cstddef>

#include "probmatch/geometry.hpp"
#include "probmatch/random.hpp"
#include "probmatch/votes.hpp"

namespace probmatch {

/// Exhaustive search lattice. Translations are multiples of
/// `translation_step`; angles are multiples of `angle_step` revolutions. A
/// non-positive angle step selects the step at which D * 2π * step equals the
/// translation step.
struct GridSpec {
  double translation_step = 0.01;
  double angle_step = 0.0;
};

struct GridResult {
  Transform best;
  double overlap = 0.0;
  std::size_t evaluated = 0;
};

/// Evaluates overlap_area on every lattice point whose image of A can meet B
/// and returns the best one (ties: smallest lattice index, angle first).
/// Translation mode uses no angle; both rigid modes search rigid motions.
GridResult grid_search(const TriangleSoup& a, const TriangleSoup& b, VoteMode mode, const GridSpec& spec,
                       unsigned threads = 1);

struct McEstimate {
  double estimate = 0.0;
  double sigma = 0.0;
};

/// |A| times the fraction of uniform points a in A with t(a) in B.
McEstimate mc_overlap(const TriangleSoup& a, const TriangleSoup& b, const Transform& t, std::size_t samples,
                      RandomSource& rng);

}  // namespace probmatch
