#include "probmatch/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

namespace probmatch {

namespace {

bool finite(const Point2& p) { return std::isfinite(p.x()) && std::isfinite(p.y()); }

// Convex polygon with at most 3 + 3 vertices (a triangle clipped by three half-planes).
struct SmallPolygon {
  std::array<Point2, 9> v;
  std::size_t n = 0;
};

// Keeps the part of `in` left of the directed line a->b.
void clip_half_plane(const SmallPolygon& in, const Point2& a, const Point2& b, SmallPolygon& out) {
  out.n = 0;
  if (in.n == 0) return;
  for (std::size_t i = 0; i < in.n; ++i) {
    const Point2& p = in.v[i];
    const Point2& q = in.v[(i + 1) % in.n];
    const double sp = orient2d(a, b, p);
    const double sq = orient2d(a, b, q);
    if (sp >= 0.0) out.v[out.n++] = p;
    if ((sp > 0.0 && sq < 0.0) || (sp < 0.0 && sq > 0.0)) {
      const double s = sp / (sp - sq);
      out.v[out.n++] = p + s * (q - p);
    }
  }
  if (out.n < 3) out.n = 0;
}

double shoelace(const SmallPolygon& poly) {
  double twice = 0.0;
  for (std::size_t i = 0; i < poly.n; ++i) {
    const Point2& p = poly.v[i];
    const Point2& q = poly.v[(i + 1) % poly.n];
    twice += p.x() * q.y() - p.y() * q.x();
  }
  return 0.5 * twice;
}

double clip_area(const std::array<Point2, 3>& subject, const std::array<Point2, 3>& clipper) {
  SmallPolygon a, b;
  a.v[0] = subject[0];
  a.v[1] = subject[1];
  a.v[2] = subject[2];
  a.n = 3;
  clip_half_plane(a, clipper[0], clipper[1], b);
  clip_half_plane(b, clipper[1], clipper[2], a);
  clip_half_plane(a, clipper[2], clipper[0], b);
  return std::max(0.0, shoelace(b));
}

Box2 bounds_of(const std::array<Point2, 3>& v) {
  Box2 box(v[0]);
  box.extend(v[1]);
  box.extend(v[2]);
  return box;
}

// Andrew's monotone chain; returns hull vertices without repetition.
std::vector<Point2> convex_hull(std::vector<Point2> pts) {
  std::sort(pts.begin(), pts.end(), [](const Point2& p, const Point2& q) {
    return p.x() < q.x() || (p.x() == q.x() && p.y() < q.y());
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Point2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && orient2d(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lo = k + 1; i-- > 0;) {
    while (k >= lo && orient2d(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

}  // namespace

double wrap_angle(double revolutions) {
  double a = revolutions - std::floor(revolutions + 0.5);
  // floor can round a value just below 1/2 up to exactly 1/2.
  if (a >= 0.5) a -= 1.0;
  if (a < -0.5) a += 1.0;
  return a;
}

Eigen::Matrix2d rotation(double revolutions) {
  return Eigen::Rotation2Dd(2.0 * std::numbers::pi * revolutions).toRotationMatrix();
}

// ---------------------------------------------------------------------------
// Triangle

Triangle::Triangle(const Point2& a, const Point2& b, const Point2& c) : v_{a, b, c} {
  if (!finite(a) || !finite(b) || !finite(c)) throw ShapeError("triangle has a non-finite vertex");
  if (!(orient2d(a, b, c) > 0.0))
    throw ShapeError("triangle is degenerate or clockwise");
}

Box2 Triangle::bounds() const { return bounds_of(v_); }

bool Triangle::contains(const Point2& p) const {
  return orient2d(v_[0], v_[1], p) >= 0.0 && orient2d(v_[1], v_[2], p) >= 0.0 &&
         orient2d(v_[2], v_[0], p) >= 0.0;
}

bool Triangle::contains_strictly(const Point2& p) const {
  return orient2d(v_[0], v_[1], p) > 0.0 && orient2d(v_[1], v_[2], p) > 0.0 &&
         orient2d(v_[2], v_[0], p) > 0.0;
}

// ---------------------------------------------------------------------------
// TriangleSoup

TriangleSoup::TriangleSoup(std::vector<Triangle> triangles) : triangles_(std::move(triangles)) {
  if (triangles_.empty()) throw ShapeError("shape has no triangles");
  if (triangles_.size() > std::numeric_limits<std::uint32_t>::max())
    throw ShapeError("shape has too many triangles");
  for (const auto& t : triangles_) {
    area_ += t.area();
    bounds_.extend(t.bounds());
  }
  if (!(area_ > 0.0)) throw ShapeError("shape has zero area");

  const auto side = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(triangles_.size()))));
  nx_ = ny_ = std::clamp<std::size_t>(side, 1, 1024);
  cell_w_ = bounds_.sizes().x() / static_cast<double>(nx_);
  cell_h_ = bounds_.sizes().y() / static_cast<double>(ny_);
  cells_.resize(nx_ * ny_);
  for (std::size_t i = 0; i < triangles_.size(); ++i) {
    const Box2 b = triangles_[i].bounds();
    const std::size_t x0 = cell_of(b.min().x(), bounds_.min().x(), cell_w_, nx_);
    const std::size_t x1 = cell_of(b.max().x(), bounds_.min().x(), cell_w_, nx_);
    const std::size_t y0 = cell_of(b.min().y(), bounds_.min().y(), cell_h_, ny_);
    const std::size_t y1 = cell_of(b.max().y(), bounds_.min().y(), cell_h_, ny_);
    for (std::size_t y = y0; y <= y1; ++y)
      for (std::size_t x = x0; x <= x1; ++x) cells_[y * nx_ + x].push_back(static_cast<std::uint32_t>(i));
  }
}

std::size_t TriangleSoup::cell_of(double v, double lo, double width, std::size_t n) const {
  const double c = std::floor((v - lo) / width);
  if (!(c > 0.0)) return 0;
  return std::min(static_cast<std::size_t>(c), n - 1);
}

bool TriangleSoup::contains(const Point2& p) const {
  if (!bounds_.contains(p)) return false;
  const auto& cell = cells_[cell_of(p.y(), bounds_.min().y(), cell_h_, ny_) * nx_ +
                            cell_of(p.x(), bounds_.min().x(), cell_w_, nx_)];
  return std::any_of(cell.begin(), cell.end(), [&](std::uint32_t i) { return triangles_[i].contains(p); });
}

std::size_t TriangleSoup::interior_multiplicity(const Point2& p) const {
  if (!bounds_.contains(p)) return 0;
  const auto& cell = cells_[cell_of(p.y(), bounds_.min().y(), cell_h_, ny_) * nx_ +
                            cell_of(p.x(), bounds_.min().x(), cell_w_, nx_)];
  return static_cast<std::size_t>(std::count_if(
      cell.begin(), cell.end(), [&](std::uint32_t i) { return triangles_[i].contains_strictly(p); }));
}

std::vector<std::size_t> TriangleSoup::candidates(const Box2& box) const {
  std::vector<std::size_t> out;
  if (!bounds_.intersects(box)) return out;
  const std::size_t x0 = cell_of(box.min().x(), bounds_.min().x(), cell_w_, nx_);
  const std::size_t x1 = cell_of(box.max().x(), bounds_.min().x(), cell_w_, nx_);
  const std::size_t y0 = cell_of(box.min().y(), bounds_.min().y(), cell_h_, ny_);
  const std::size_t y1 = cell_of(box.max().y(), bounds_.min().y(), cell_h_, ny_);
  if (x0 == 0 && y0 == 0 && x1 == nx_ - 1 && y1 == ny_ - 1) {
    for (std::size_t i = 0; i < triangles_.size(); ++i)
      if (triangles_[i].bounds().intersects(box)) out.push_back(i);
    return out;
  }
  for (std::size_t y = y0; y <= y1; ++y)
    for (std::size_t x = x0; x <= x1; ++x)
      for (std::uint32_t i : cells_[y * nx_ + x])
        if (triangles_[i].bounds().intersects(box)) out.push_back(i);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Transforms

Translation::Translation(const Point2& t) : offset(t) {
  if (!finite(t)) throw std::invalid_argument("translation must be finite");
}

RigidMotion::RigidMotion(double a, const Point2& t) : alpha(a), offset(t) {
  if (!std::isfinite(a) || !finite(t)) throw std::invalid_argument("rigid motion must be finite");
  alpha = wrap_angle(a);
}

Point2 apply(const Translation& t, const Point2& p) { return p + t.offset; }

Point2 apply(const RigidMotion& r, const Point2& p) { return rotation(r.alpha) * p + r.offset; }

Point2 apply(const Transform& t, const Point2& p) {
  return std::visit([&](const auto& x) { return probmatch::apply(x, p); }, t);
}

Translation invert(const Translation& t) { return Translation(-t.offset); }

RigidMotion invert(const RigidMotion& r) {
  // x = R^T (y - t)  =>  angle -alpha, offset -R^T t
  return RigidMotion(-r.alpha, -(rotation(r.alpha).transpose() * r.offset));
}

Transform invert(const Transform& t) {
  return std::visit([](const auto& x) -> Transform { return invert(x); }, t);
}

TriangleSoup transformed(const TriangleSoup& soup, const Transform& t) {
  std::vector<Triangle> out;
  out.reserve(soup.size());
  for (const auto& tri : soup.triangles()) out.emplace_back(probmatch::apply(t, tri[0]), probmatch::apply(t, tri[1]), probmatch::apply(t, tri[2]));
  return TriangleSoup(std::move(out));
}

// ---------------------------------------------------------------------------
// Overlap

double intersection_area(const Triangle& t1, const Triangle& t2) {
  if (!t1.bounds().intersects(t2.bounds())) return 0.0;
  return clip_area(t1.vertices(), t2.vertices());
}

double overlap_area(const TriangleSoup& a, const TriangleSoup& b, const Transform& t) {
  double total = 0.0;
  for (const auto& tri : a.triangles()) {
    // Rigid images keep their orientation; the clip works on raw vertices so
    // rounding never trips the Triangle constructor.
    const std::array<Point2, 3> img{probmatch::apply(t, tri[0]), probmatch::apply(t, tri[1]), probmatch::apply(t, tri[2])};
    const Box2 box = bounds_of(img);
    for (std::size_t j : b.candidates(box)) total += clip_area(img, b.triangles()[j].vertices());
  }
  return total;
}

double symmetric_difference_area(const TriangleSoup& a, const TriangleSoup& b, const Transform& t) {
  return a.area() + b.area() - 2.0 * overlap_area(a, b, t);
}

// ---------------------------------------------------------------------------
// Statistics

std::vector<Segment> boundary_edges(const TriangleSoup& soup) {
  using Key = std::array<double, 4>;
  std::map<Key, int> multiplicity;
  for (const auto& tri : soup.triangles()) {
    for (int e = 0; e < 3; ++e) {
      const Point2& p = tri[e];
      const Point2& q = tri[(e + 1) % 3];
      const bool ordered = p.x() < q.x() || (p.x() == q.x() && p.y() < q.y());
      const Key key = ordered ? Key{p.x(), p.y(), q.x(), q.y()} : Key{q.x(), q.y(), p.x(), p.y()};
      if (++multiplicity[key] > 2)
        throw ShapeError("edge shared by more than two triangles; the triangles overlap");
    }
  }
  std::vector<Segment> edges;
  for (const auto& [k, m] : multiplicity)
    if (m == 1) edges.push_back({Point2(k[0], k[1]), Point2(k[2], k[3])});
  return edges;
}

ShapeStats shape_stats(const TriangleSoup& soup) {
  ShapeStats s;
  s.area = soup.area();
  s.bbox = soup.bounds();
  for (const auto& e : boundary_edges(soup)) s.boundary_length += (e.b - e.a).norm();

  std::vector<Point2> vertices;
  vertices.reserve(3 * soup.size());
  for (const auto& tri : soup.triangles())
    for (const auto& v : tri.vertices()) vertices.push_back(v);
  const auto hull = convex_hull(std::move(vertices));
  double best = 0.0;
  for (std::size_t i = 0; i < hull.size(); ++i)
    for (std::size_t j = i + 1; j < hull.size(); ++j) best = std::max(best, (hull[i] - hull[j]).squaredNorm());
  s.diameter = std::sqrt(best);
  return s;
}

}  // namespace probmatch
