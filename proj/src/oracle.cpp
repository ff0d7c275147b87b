#include "probmatch/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <vector>

#include "probmatch/sampling.hpp"

namespace probmatch {

namespace {

struct Axis {
  std::int64_t first = 0;
  std::int64_t last = -1;
  double step = 1.0;

  std::int64_t count() const { return last - first + 1; }
  double at(std::int64_t k) const { return static_cast<double>(first + k) * step; }
};

// Lattice indices covering [lo, hi] padded by one step.
Axis lattice(double lo, double hi, double step) {
  Axis a;
  a.step = step;
  a.first = static_cast<std::int64_t>(std::floor(lo / step)) - 1;
  a.last = static_cast<std::int64_t>(std::ceil(hi / step)) + 1;
  return a;
}

}  // namespace

GridResult grid_search(const TriangleSoup& a, const TriangleSoup& b, VoteMode mode, const GridSpec& spec,
                       unsigned threads) {
  if (!(spec.translation_step > 0.0)) throw std::invalid_argument("translation step must be positive");
  const Box2& ba = a.bounds();
  const Box2& bb = b.bounds();

  std::vector<double> angles{0.0};
  Axis ax, ay;
  if (!is_rigid(mode)) {
    ax = lattice(bb.min().x() - ba.max().x(), bb.max().x() - ba.min().x(), spec.translation_step);
    ay = lattice(bb.min().y() - ba.max().y(), bb.max().y() - ba.min().y(), spec.translation_step);
  } else {
    double astep = spec.angle_step;
    if (!(astep > 0.0)) {
      const double d = shape_stats(a).diameter;
      astep = spec.translation_step / (2.0 * std::numbers::pi * std::max(d, 1e-300));
    }
    // Any rotation of A about the origin stays within this radius.
    double radius = 0.0;
    for (const auto& t : a.triangles())
      for (const auto& v : t.vertices()) radius = std::max(radius, v.norm());
    ax = lattice(bb.min().x() - radius, bb.max().x() + radius, spec.translation_step);
    ay = lattice(bb.min().y() - radius, bb.max().y() + radius, spec.translation_step);
    angles.clear();
    const auto k0 = static_cast<std::int64_t>(std::ceil(-0.5 / astep));
    for (std::int64_t k = k0; static_cast<double>(k) * astep < 0.5; ++k) angles.push_back(static_cast<double>(k) * astep);
  }

  const auto identity = [&]() -> Transform {
    if (is_rigid(mode)) return RigidMotion();
    return Translation();
  };
  GridResult result{identity(), overlap_area(a, b, identity()), 0};
  if (ax.count() <= 0 || ay.count() <= 0 || angles.empty()) return result;

  // One task per angle; results reduced in index order for a deterministic argmax.
  struct Local {
    double value = -1.0;
    std::int64_t ix = 0, iy = 0;
    std::size_t evaluated = 0;
  };
  std::vector<Local> per_angle(angles.size());
  const auto run = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t ia = lo; ia < hi; ++ia) {
      Local best;
      for (std::int64_t i = 0; i < ax.count(); ++i) {
        for (std::int64_t j = 0; j < ay.count(); ++j) {
          const Point2 t(ax.at(i), ay.at(j));
          Transform tr = is_rigid(mode) ? Transform(RigidMotion(angles[ia], t)) : Transform(Translation(t));
          const double v = overlap_area(a, b, tr);
          ++best.evaluated;
          if (v > best.value) best = {v, i, j, best.evaluated};
        }
      }
      per_angle[ia] = best;
    }
  };
  threads = std::max(1u, threads);
  if (threads == 1) {
    run(0, angles.size());
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (angles.size() + threads - 1) / threads;
    for (std::size_t lo = 0; lo < angles.size(); lo += chunk)
      pool.emplace_back(run, lo, std::min(angles.size(), lo + chunk));
    for (auto& t : pool) t.join();
  }

  double best_value = -1.0;
  for (std::size_t ia = 0; ia < angles.size(); ++ia) {
    result.evaluated += per_angle[ia].evaluated;
    if (per_angle[ia].value > best_value) {
      best_value = per_angle[ia].value;
      const Point2 t(ax.at(per_angle[ia].ix), ay.at(per_angle[ia].iy));
      result.best = is_rigid(mode) ? Transform(RigidMotion(angles[ia], t)) : Transform(Translation(t));
      result.overlap = best_value;
    }
  }
  return result;
}

McEstimate mc_overlap(const TriangleSoup& a, const TriangleSoup& b, const Transform& t, std::size_t samples,
                      RandomSource& rng) {
  if (samples == 0) throw std::invalid_argument("at least one sample is required");
  const AreaIndex idx(a);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < samples; ++i)
    if (b.contains(probmatch::apply(t, sample_point(idx, rng)))) ++hits;
  const double n = static_cast<double>(samples);
  const double p = static_cast<double>(hits) / n;
  return {a.area() * p, a.area() * std::sqrt(p * (1.0 - p) / n)};
}

}  // namespace probmatch
