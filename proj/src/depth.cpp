#include "probmatch/depth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace probmatch {

std::string_view to_string(DepthMethod method) { return method == DepthMethod::exact ? "exact" : "approx"; }

namespace {

using Index = Eigen::Index;

// Range add / range max over integer leaves, reporting the leftmost maximum.
class MaxTree {
 public:
  explicit MaxTree(std::size_t n) : n_(n), max_(4 * n, 0), add_(4 * n, 0) {}

  void add(std::size_t l, std::size_t r, int v) { add(1, 0, n_ - 1, l, r, v); }

  /// (max, leftmost leaf attaining it) over all leaves.
  std::pair<int, std::size_t> top() const { return {max_[1], leftmost(1, 0, n_ - 1)}; }

 private:
  void add(std::size_t node, std::size_t nl, std::size_t nr, std::size_t l, std::size_t r, int v) {
    if (r < nl || nr < l) return;
    if (l <= nl && nr <= r) {
      max_[node] += v;
      add_[node] += v;
      return;
    }
    const std::size_t mid = (nl + nr) / 2;
    add(2 * node, nl, mid, l, r, v);
    add(2 * node + 1, mid + 1, nr, l, r, v);
    max_[node] = add_[node] + std::max(max_[2 * node], max_[2 * node + 1]);
  }

  std::size_t leftmost(std::size_t node, std::size_t nl, std::size_t nr) const {
    while (nl != nr) {
      const int target = max_[node] - add_[node];
      const std::size_t mid = (nl + nr) / 2;
      if (max_[2 * node] == target) {
        node = 2 * node;
        nr = mid;
      } else {
        node = 2 * node + 1;
        nl = mid + 1;
      }
    }
    return nl;
  }

  std::size_t n_;
  std::vector<int> max_;
  std::vector<int> add_;
};

struct Best2 {
  std::size_t depth = 0;
  double x = 0.0, y = 0.0;
};

// Plane sweep over the boxes `ids` (columns cx, cy) inside the closed window
// [xmin, xmax] x [ymin, ymax]. Lower edges are clamped to the window, so the
// candidates are the window corner and the lower edges that fall inside it.
// Ties go to the smallest x, then the smallest y.
struct Window {
  double xmin = -std::numeric_limits<double>::infinity();
  double xmax = std::numeric_limits<double>::infinity();
  double ymin = -std::numeric_limits<double>::infinity();
  double ymax = std::numeric_limits<double>::infinity();
};

Best2 sweep_2d(const BoxSet& b, std::span<const Index> ids, Index cx, Index cy, const Window& w) {
  Best2 best;
  struct Entry {
    double xlo, xhi, ylo, yhi;
    std::size_t l = 0, r = 0;
  };
  std::vector<Entry> entries;
  entries.reserve(ids.size());
  std::vector<double> ys;
  ys.reserve(ids.size());
  for (Index i : ids) {
    const Entry e{std::max(b.lo(i, cx), w.xmin), b.hi(i, cx), std::max(b.lo(i, cy), w.ymin), b.hi(i, cy)};
    if (e.xlo > w.xmax || e.xhi < e.xlo || e.ylo > w.ymax || e.yhi < e.ylo) continue;
    entries.push_back(e);
    ys.push_back(e.ylo);
  }
  if (entries.empty()) return best;
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  for (auto& e : entries) {
    e.l = static_cast<std::size_t>(std::lower_bound(ys.begin(), ys.end(), e.ylo) - ys.begin());
    e.r = static_cast<std::size_t>(std::upper_bound(ys.begin(), ys.end(), e.yhi) - ys.begin()) - 1;
  }

  std::vector<const Entry*> in(entries.size()), out(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) in[i] = out[i] = &entries[i];
  std::sort(in.begin(), in.end(), [](const Entry* p, const Entry* q) { return p->xlo < q->xlo; });
  std::sort(out.begin(), out.end(), [](const Entry* p, const Entry* q) { return p->xhi < q->xhi; });

  MaxTree tree(ys.size());
  std::size_t j = 0;
  for (std::size_t i = 0; i < in.size();) {
    const double x = in[i]->xlo;
    for (; j < out.size() && out[j]->xhi < x; ++j) tree.add(out[j]->l, out[j]->r, -1);
    for (; i < in.size() && in[i]->xlo == x; ++i) tree.add(in[i]->l, in[i]->r, +1);
    const auto [depth, leaf] = tree.top();
    if (depth > 0 && static_cast<std::size_t>(depth) > best.depth) {
      best.depth = static_cast<std::size_t>(depth);
      best.x = x;
      best.y = ys[leaf];
    }
  }
  return best;
}

// Shifted grid cell key; axes beyond dims() are zero.
using CellKey = std::array<std::int64_t, 3>;

Eigen::VectorXd half_widths(const BoxSet& boxes) {
  return 0.5 * (boxes.hi.row(0) - boxes.lo.row(0)).transpose();
}

}  // namespace

// ---------------------------------------------------------------------------

BoxSet neighborhood_boxes(const Eigen::MatrixXd& points, const Eigen::VectorXd& half_width, bool wrap_first_axis) {
  const Index n = points.rows();
  const Index d = points.cols();
  if (half_width.size() != d) throw std::invalid_argument("half-width dimension mismatch");
  if ((half_width.array() <= 0.0).any()) throw std::invalid_argument("half-widths must be positive");

  std::vector<std::pair<Index, double>> copies;  // (row, shift of axis 0)
  if (wrap_first_axis) {
    const double h = half_width(0);
    for (Index i = 0; i < n; ++i) {
      const double a = points(i, 0);
      if (a > 0.5 - h) copies.emplace_back(i, -1.0);
      if (a < -0.5 + h) copies.emplace_back(i, +1.0);
    }
  }
  const Index total = n + static_cast<Index>(copies.size());
  BoxSet b;
  b.lo.resize(total, d);
  b.hi.resize(total, d);
  b.lo.topRows(n) = points.rowwise() - half_width.transpose();
  b.hi.topRows(n) = points.rowwise() + half_width.transpose();
  for (std::size_t c = 0; c < copies.size(); ++c) {
    const Index row = n + static_cast<Index>(c);
    Eigen::RowVectorXd p = points.row(copies[c].first);
    p(0) += copies[c].second;
    b.lo.row(row) = p - half_width.transpose();
    b.hi.row(row) = p + half_width.transpose();
  }
  return b;
}

BoxSet neighborhood_boxes(const VoteCloud& cloud, const DepthQuery& q) {
  if (!(q.delta > 0.0) || !std::isfinite(q.delta)) throw std::invalid_argument("delta must be positive");
  if ((q.scale.array() <= 0.0).any()) throw std::invalid_argument("scale components must be positive");
  const bool rigid = is_rigid(cloud.mode);
  const bool wrap = rigid && q.angle_wrap;
  if (wrap && q.delta * q.scale(0) >= 0.25)
    throw std::invalid_argument("angle half-width must be below 1/4 revolution when the angle axis wraps");
  Eigen::VectorXd half = rigid ? Eigen::VectorXd(q.delta * q.scale) : Eigen::VectorXd(q.delta * q.scale.tail<2>());
  return neighborhood_boxes(vote_coordinates(cloud), half, wrap);
}

std::size_t covering_count(const BoxSet& boxes, const Eigen::VectorXd& p) {
  std::size_t count = 0;
  for (Index i = 0; i < boxes.size(); ++i) {
    bool inside = true;
    for (Index k = 0; k < boxes.dims() && inside; ++k) inside = boxes.lo(i, k) <= p(k) && p(k) <= boxes.hi(i, k);
    count += inside ? 1 : 0;
  }
  return count;
}

std::size_t box_count(const VoteCloud& cloud, const Transform& center, const DepthQuery& q) {
  const BoxSet boxes = neighborhood_boxes(cloud, q);
  Eigen::VectorXd p;
  if (const auto* r = std::get_if<RigidMotion>(&center)) {
    p = Eigen::Vector3d(r->alpha, r->offset.x(), r->offset.y());
  } else {
    p = std::get<Translation>(center).offset;
  }
  if (p.size() != boxes.dims()) throw std::invalid_argument("transform kind does not match the vote cloud");
  return covering_count(boxes, p);
}

DepthPoint deepest_point_2d(const BoxSet& boxes) {
  if (boxes.dims() != 2) throw std::invalid_argument("deepest_point_2d needs planar boxes");
  if (boxes.size() == 0) throw std::invalid_argument("no boxes");
  std::vector<Index> ids(static_cast<std::size_t>(boxes.size()));
  for (Index i = 0; i < boxes.size(); ++i) ids[static_cast<std::size_t>(i)] = i;
  const Best2 b = sweep_2d(boxes, ids, 0, 1, Window{});
  return {Eigen::Vector2d(b.x, b.y), b.depth};
}

namespace {

// Branch and bound over the grid of candidate coordinates. A region is an
// index range per axis; its hull is the box spanned by the end candidates.
// Boxes containing the hull are only counted, boxes meeting it are kept in
// `partial`. Once no partial box has an axis-0 edge inside the hull, the
// region is one slab and the planar sweep solves it exactly.
class Search3 {
 public:
  Search3(const BoxSet& boxes, std::array<std::vector<double>, 3> cand, std::size_t floor)
      : b_(boxes), cand_(std::move(cand)), floor_(floor) {
    width_ = (b_.hi.row(0) - b_.lo.row(0)).transpose();
  }

  DepthPoint run() {
    Region root;
    for (int k = 0; k < 3; ++k) root.hi[k] = cand_[k].size() - 1;
    const Hull h = hull(root);
    std::vector<Index> partial;
    std::size_t full = 0;
    for (Index i = 0; i < b_.size(); ++i) classify(i, h, full, partial);
    visit(root, full, partial);
    return {Eigen::Vector3d(best_point_[0], best_point_[1], best_point_[2]), best_depth_};
  }

 private:
  struct Region {
    std::array<std::size_t, 3> lo{}, hi{};
  };
  using Hull = std::array<std::array<double, 2>, 3>;
  using Point = std::array<double, 3>;

  Hull hull(const Region& r) const {
    Hull h;
    for (int k = 0; k < 3; ++k) h[k] = {cand_[k][r.lo[k]], cand_[k][r.hi[k]]};
    return h;
  }

  void classify(Index i, const Hull& h, std::size_t& full, std::vector<Index>& partial) const {
    bool contains = true;
    for (int k = 0; k < 3; ++k) {
      if (b_.lo(i, k) > h[k][1] || b_.hi(i, k) < h[k][0]) return;
      contains = contains && b_.lo(i, k) <= h[k][0] && b_.hi(i, k) >= h[k][1];
    }
    if (contains)
      ++full;
    else
      partial.push_back(i);
  }

  bool pruned(std::size_t bound, const Point& corner) const {
    if (bound < floor_) return true;
    if (!found_) return false;
    return bound < best_depth_ || (bound == best_depth_ && !(corner < best_point_));
  }

  void offer(std::size_t depth, const Point& p) {
    if (!found_ || depth > best_depth_ || (depth == best_depth_ && p < best_point_)) {
      found_ = true;
      best_depth_ = depth;
      best_point_ = p;
    }
  }

  void visit(const Region& r, std::size_t full, const std::vector<Index>& partial) {
    const Hull h = hull(r);
    const Point corner{h[0][0], h[1][0], h[2][0]};
    if (pruned(full + partial.size(), corner)) return;

    const bool one_slab = std::none_of(partial.begin(), partial.end(), [&](Index i) {
      return b_.lo(i, 0) > h[0][0] || b_.hi(i, 0) < h[0][1];
    });
    if (one_slab) {
      const Best2 s = sweep_2d(b_, partial, 1, 2, Window{h[1][0], h[1][1], h[2][0], h[2][1]});
      if (s.depth == 0)
        offer(full, corner);
      else
        offer(full + s.depth, {h[0][0], s.x, s.y});
      return;
    }

    int axis = 0;
    double extent = -1.0;
    for (int k = 0; k < 3; ++k) {
      if (r.lo[k] == r.hi[k]) continue;
      const double e = (h[k][1] - h[k][0]) / width_(k);
      if (e > extent) {
        extent = e;
        axis = k;
      }
    }
    const std::size_t mid = (r.lo[axis] + r.hi[axis]) / 2;
    std::array<Region, 2> child{r, r};
    child[0].hi[axis] = mid;
    child[1].lo[axis] = mid + 1;
    std::array<std::vector<Index>, 2> lists;
    std::array<std::size_t, 2> fulls{full, full};
    for (int c = 0; c < 2; ++c) {
      const Hull ch = hull(child[c]);
      lists[c].reserve(partial.size());
      for (Index i : partial) classify(i, ch, fulls[c], lists[c]);
    }
    const bool right_first = fulls[1] + lists[1].size() > fulls[0] + lists[0].size();
    for (int c : {right_first ? 1 : 0, right_first ? 0 : 1}) visit(child[c], fulls[c], lists[c]);
  }

  const BoxSet& b_;
  std::array<std::vector<double>, 3> cand_;
  std::size_t floor_;
  Eigen::Vector3d width_;
  bool found_ = false;
  std::size_t best_depth_ = 0;
  Point best_point_{};
};

}  // namespace

DepthPoint deepest_point_3d(const BoxSet& boxes, bool wrap_first_axis) {
  if (boxes.dims() != 3) throw std::invalid_argument("deepest_point_3d needs 3D boxes");
  if (boxes.size() == 0) throw std::invalid_argument("no boxes");

  std::array<std::vector<double>, 3> cand;
  for (int k = 0; k < 3; ++k) {
    auto& c = cand[k];
    c.reserve(static_cast<std::size_t>(boxes.size()) + 1);
    for (Index i = 0; i < boxes.size(); ++i) {
      const double v = boxes.lo(i, k);
      if (k == 0 && wrap_first_axis && !(v >= -0.5 && v < 0.5)) continue;
      c.push_back(v);
    }
    if (k == 0 && wrap_first_axis) c.push_back(-0.5);
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
  }
  // The shifted-grid estimate is an attained depth, so it bounds the optimum from below.
  const std::size_t floor = approximate_deepest_point(boxes, wrap_first_axis).depth;
  return Search3(boxes, std::move(cand), floor).run();
}

DepthPoint approximate_deepest_point(const BoxSet& boxes, bool wrap_first_axis) {
  if (boxes.size() == 0) throw std::invalid_argument("no boxes");
  const Index d = boxes.dims();
  if (d < 1 || d > 3) throw std::invalid_argument("approximate depth supports 1 to 3 axes");
  const Eigen::VectorXd half = half_widths(boxes);
  const Eigen::VectorXd width = 2.0 * half;
  const Eigen::MatrixXd centers = 0.5 * (boxes.lo + boxes.hi);
  const Eigen::VectorXd origin = centers.colwise().minCoeff().transpose();

  std::size_t best_count = 0;
  std::tuple<unsigned, CellKey> best_tag{};
  Eigen::VectorXd best_center(d);
  for (unsigned shift = 0; shift < (1u << d); ++shift) {
    Eigen::VectorXd offset = origin;
    for (Index k = 0; k < d; ++k)
      if (shift & (1u << k)) offset(k) -= half(k);
    std::map<CellKey, std::size_t> counts;
    for (Index i = 0; i < centers.rows(); ++i) {
      CellKey key{};
      for (Index k = 0; k < d; ++k)
        key[static_cast<std::size_t>(k)] =
            static_cast<std::int64_t>(std::floor((centers(i, k) - offset(k)) / width(k)));
      ++counts[key];
    }
    for (const auto& [key, count] : counts) {
      // std::map iterates keys in ascending order, so the first maximum wins ties.
      if (count > best_count) {
        best_count = count;
        best_tag = {shift, key};
        for (Index k = 0; k < d; ++k)
          best_center(k) = offset(k) + (static_cast<double>(key[static_cast<std::size_t>(k)]) + 0.5) * width(k);
      }
    }
  }
  if (wrap_first_axis) best_center(0) = wrap_angle(best_center(0));
  return {best_center, covering_count(boxes, best_center)};
}

// ---------------------------------------------------------------------------

DepthResult deepest_2d(const VoteCloud& votes, const DepthQuery& q) {
  if (votes.mode != VoteMode::translation) throw std::invalid_argument("deepest_2d needs a translation cloud");
  if (votes.votes.empty()) throw std::invalid_argument("empty vote cloud");
  const DepthPoint p = deepest_point_2d(neighborhood_boxes(votes, q));
  return {Translation(p.point(0), p.point(1)), p.depth, DepthMethod::exact, 1.0};
}

DepthResult deepest_3d(const VoteCloud& votes, const DepthQuery& q) {
  if (!is_rigid(votes.mode)) throw std::invalid_argument("deepest_3d needs a rigid-motion cloud");
  if (votes.votes.empty()) throw std::invalid_argument("empty vote cloud");
  const DepthPoint p = deepest_point_3d(neighborhood_boxes(votes, q), q.angle_wrap);
  return {RigidMotion(p.point(0), p.point(1), p.point(2)), p.depth, DepthMethod::exact, 1.0};
}

DepthResult deepest_approx(const VoteCloud& votes, const DepthQuery& q) {
  if (votes.votes.empty()) throw std::invalid_argument("empty vote cloud");
  const bool rigid = is_rigid(votes.mode);
  const BoxSet boxes = neighborhood_boxes(votes, q);
  const DepthPoint p = approximate_deepest_point(boxes, rigid && q.angle_wrap);
  DepthResult r;
  if (rigid)
    r.argmax = RigidMotion(p.point(0), p.point(1), p.point(2));
  else
    r.argmax = Translation(p.point(0), p.point(1));
  r.depth = p.depth;
  r.method = DepthMethod::approx;
  r.approx_factor = std::ldexp(1.0, -static_cast<int>(boxes.dims()));
  return r;
}

DepthResult deepest(const VoteCloud& votes, const DepthQuery& q, DepthMethod method) {
  if (method == DepthMethod::approx) return deepest_approx(votes, q);
  return is_rigid(votes.mode) ? deepest_3d(votes, q) : deepest_2d(votes, q);
}

}  // namespace probmatch
