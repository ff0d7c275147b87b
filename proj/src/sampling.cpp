#include "probmatch/sampling.hpp"

#include <algorithm>

namespace probmatch {

AreaIndex::AreaIndex(const TriangleSoup& soup) : soup_(&soup) {
  const double total = soup.area();
  cumulative_.reserve(soup.size());
  double running = 0.0;
  for (const auto& t : soup.triangles()) {
    const double a = t.area();
    if (!(a > 0.0)) throw ShapeError("zero-area triangle in shape");
    running += a;
    cumulative_.push_back(running / total);
  }
  cumulative_.back() = 1.0;
}

std::size_t AreaIndex::pick(double u) const {
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  return std::min(static_cast<std::size_t>(it - cumulative_.begin()), cumulative_.size() - 1);
}

Point2 sample_point(const AreaIndex& idx, RandomSource& rng, std::size_t& triangle) {
  triangle = idx.pick(rng.uniform());
  double u = rng.uniform();
  double v = rng.uniform();
  if (u + v > 1.0) {
    u = 1.0 - u;
    v = 1.0 - v;
  }
  const Triangle& t = idx.soup().triangles()[triangle];
  return t[0] + u * (t[1] - t[0]) + v * (t[2] - t[0]);
}

Point2 sample_point(const AreaIndex& idx, RandomSource& rng) {
  std::size_t ignored = 0;
  return sample_point(idx, rng, ignored);
}

void validate_interior_disjoint(const TriangleSoup& soup, std::uint64_t seed, std::size_t samples) {
  const AreaIndex idx(soup);
  RandomSource rng(seed, 0);
  for (std::size_t i = 0; i < samples; ++i) {
    const Point2 p = sample_point(idx, rng);
    if (soup.interior_multiplicity(p) >= 2)
      throw ShapeError("triangles overlap near (" + std::to_string(p.x()) + ", " + std::to_string(p.y()) + ")");
  }
}

}  // namespace probmatch
