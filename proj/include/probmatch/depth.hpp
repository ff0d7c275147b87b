#pragma once

#include <cstddef>
#include <string_view>

#include <Eigen/Dense>

#include "probmatch/geometry.hpp"
#include "probmatch/votes.hpp"

namespace probmatch {

/// Clustering neighbourhood: a max-norm box with half-width delta * scale[k]
/// on axis k. Axes are ordered (alpha, tx, ty); translation clouds use the
/// last two. With angle_wrap the alpha axis is the circle [-1/2, 1/2).
struct DepthQuery {
  double delta = 0.05;
  Eigen::Vector3d scale = Eigen::Vector3d::Ones();
  bool angle_wrap = true;
};

enum class DepthMethod { exact, approx };

std::string_view to_string(DepthMethod method);

struct DepthResult {
  Transform argmax;
  std::size_t depth = 0;
  DepthMethod method = DepthMethod::exact;
  double approx_factor = 1.0;
};

/// Closed axis-aligned boxes, one per row.
struct BoxSet {
  Eigen::MatrixXd lo;
  Eigen::MatrixXd hi;

  Eigen::Index size() const { return lo.rows(); }
  Eigen::Index dims() const { return lo.cols(); }
};

/// Boxes of the given half-widths around each row of `points`. When
/// `wrap_first_axis` is set, points within one half-width of +-1/2 on axis 0
/// get a copy shifted by -+1 so that boxes wrap around the circle.
BoxSet neighborhood_boxes(const Eigen::MatrixXd& points, const Eigen::VectorXd& half_width,
                          bool wrap_first_axis);

/// Boxes for a cloud under `q`; validates delta, scale and the wrap limit.
BoxSet neighborhood_boxes(const VoteCloud& cloud, const DepthQuery& q);

/// Number of boxes containing `p` (boundary-inclusive).
std::size_t covering_count(const BoxSet& boxes, const Eigen::VectorXd& p);

/// Votes of `cloud` inside the delta-box centred at `center`.
std::size_t box_count(const VoteCloud& cloud, const Transform& center, const DepthQuery& q);

struct DepthPoint {
  Eigen::VectorXd point;
  std::size_t depth = 0;
};

/// Deepest point of a planar box arrangement by plane sweep with a max
/// segment tree, O(N log N). Among deepest points the lexicographically
/// smallest is returned; it is always a (box.lo.x, box.lo.y) pair.
DepthPoint deepest_point_2d(const BoxSet& boxes);

/// Deepest point of a 3D box arrangement. Branch and bound over the grid of
/// lower-edge coordinates splits regions until each is a single axis-0 slab,
/// which the planar sweep solves; a region is dropped once the boxes meeting
/// it cannot beat the best point so far. With `wrap_first_axis` only points
/// with axis-0 coordinate in [-1/2, 1/2) are candidates. Ties go to the
/// lexicographically smallest point.
DepthPoint deepest_point_3d(const BoxSet& boxes, bool wrap_first_axis);

/// Shifted-grid approximation: cells of side 2*half_width, 2^d shifts by one
/// half-width; returns the centre of the fullest cell and the exact box count
/// there. That count is at least the count of any box of half the
/// half-width, hence at least 2^-d times the maximum depth.
DepthPoint approximate_deepest_point(const BoxSet& boxes, bool wrap_first_axis);

DepthResult deepest_2d(const VoteCloud& votes, const DepthQuery& q);
DepthResult deepest_3d(const VoteCloud& votes, const DepthQuery& q);
DepthResult deepest_approx(const VoteCloud& votes, const DepthQuery& q);
DepthResult deepest(const VoteCloud& votes, const DepthQuery& q, DepthMethod method);

}  // namespace probmatch
