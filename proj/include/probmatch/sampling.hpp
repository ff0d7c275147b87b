#pragma once

#include <cstdint>
#include <vector>

#include "probmatch/geometry.hpp"
#include "probmatch/random.hpp"

namespace probmatch {

/// Partition of [0, 1] into subintervals proportional to triangle areas.
/// Holds a reference to the soup; the soup must outlive the index.
class AreaIndex {
 public:
  explicit AreaIndex(const TriangleSoup& soup);

  const TriangleSoup& soup() const { return *soup_; }
  const std::vector<double>& cumulative() const { return cumulative_; }

  /// Triangle whose subinterval contains u in [0, 1).
  std::size_t pick(double u) const;

 private:
  const TriangleSoup* soup_;
  std::vector<double> cumulative_;
};

inline AreaIndex build_area_index(const TriangleSoup& soup) { return AreaIndex(soup); }

/// Uniform point in the soup. Consumes exactly three uniforms from `rng`:
/// triangle selection, then two barycentric coordinates.
Point2 sample_point(const AreaIndex& idx, RandomSource& rng);

/// Like sample_point but also reports the triangle that was selected.
Point2 sample_point(const AreaIndex& idx, RandomSource& rng, std::size_t& triangle);

/// Randomized interior-disjointness check: throws ShapeError if any of
/// `samples` uniform points lies strictly inside two or more triangles.
void validate_interior_disjoint(const TriangleSoup& soup, std::uint64_t seed = 0,
                                std::size_t samples = 1000);

}  // namespace probmatch
