#include "probmatch/shape_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <list>
#include <numeric>
#include <optional>

#include "probmatch/sampling.hpp"

namespace probmatch {

namespace {

double signed_area(const Ring& r) {
  double twice = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const Point2& p = r[i];
    const Point2& q = r[(i + 1) % r.size()];
    twice += p.x() * q.y() - p.y() * q.x();
  }
  return 0.5 * twice;
}

int sign(double v) { return (v > 0.0) - (v < 0.0); }

bool on_segment(const Point2& p, const Point2& a, const Point2& b) {
  return std::min(a.x(), b.x()) <= p.x() && p.x() <= std::max(a.x(), b.x()) && std::min(a.y(), b.y()) <= p.y() &&
         p.y() <= std::max(a.y(), b.y());
}

// Closed segments ab and cd share at least one point.
bool segments_meet(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
  const int o1 = sign(orient2d(a, b, c)), o2 = sign(orient2d(a, b, d));
  const int o3 = sign(orient2d(c, d, a)), o4 = sign(orient2d(c, d, b));
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(c, a, b)) return true;
  if (o2 == 0 && on_segment(d, a, b)) return true;
  if (o3 == 0 && on_segment(a, c, d)) return true;
  if (o4 == 0 && on_segment(b, c, d)) return true;
  return false;
}

Ring cleaned(Ring r) {
  if (r.size() >= 2 && r.front() == r.back()) r.pop_back();
  r.erase(std::unique(r.begin(), r.end()), r.end());
  return r;
}

void check_rings(const PolygonWithHoles& rings) {
  struct Edge {
    Point2 a, b;
    std::size_t ring, index, ring_size;
  };
  std::vector<Edge> edges;
  for (std::size_t k = 0; k < rings.size(); ++k) {
    const Ring& r = rings[k];
    if (r.size() < 3) throw ShapeError("ring " + std::to_string(k) + " has fewer than 3 vertices");
    for (const auto& p : r)
      if (!std::isfinite(p.x()) || !std::isfinite(p.y()))
        throw ShapeError("ring " + std::to_string(k) + " has a non-finite vertex");
    const double area = signed_area(r);
    if (k == 0 && !(area > 0.0)) throw ShapeError("ring 0 (outer) must be counterclockwise");
    if (k > 0 && !(area < 0.0)) throw ShapeError("ring " + std::to_string(k) + " (hole) must be clockwise");
    for (std::size_t i = 0; i < r.size(); ++i) edges.push_back({r[i], r[(i + 1) % r.size()], k, i, r.size()});
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      const Edge& e = edges[i];
      const Edge& f = edges[j];
      if (e.ring == f.ring) {
        const std::size_t n = e.ring_size;
        const bool adjacent = (e.index + 1) % n == f.index || (f.index + 1) % n == e.index;
        if (adjacent) {
          // Neighbours may only share their common vertex.
          const Point2& shared = (e.index + 1) % n == f.index ? e.b : e.a;
          const Point2& far_e = (e.index + 1) % n == f.index ? e.a : e.b;
          const Point2& far_f = (e.index + 1) % n == f.index ? f.b : f.a;
          if (sign(orient2d(far_e, shared, far_f)) == 0 && (far_f - shared).dot(far_e - shared) > 0.0)
            throw ShapeError("ring " + std::to_string(e.ring) + " folds back on itself");
          continue;
        }
      }
      if (segments_meet(e.a, e.b, f.a, f.b))
        throw ShapeError("ring " + std::to_string(std::max(e.ring, f.ring)) + " intersects " +
                         (e.ring == f.ring ? "itself" : "ring " + std::to_string(std::min(e.ring, f.ring))));
    }
  }
}

// Segment m-v crosses or touches no edge of `rings` other than at m and v.
bool visible(const Point2& m, const Point2& v, const std::vector<Ring>& rings) {
  for (const Ring& r : rings) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      const Point2& a = r[i];
      const Point2& b = r[(i + 1) % r.size()];
      const bool touches_end = a == m || a == v || b == m || b == v;
      if (!touches_end) {
        if (segments_meet(m, v, a, b)) return false;
      } else if (sign(orient2d(m, v, a)) == 0 && sign(orient2d(m, v, b)) == 0) {
        // Collinear overlap with an incident edge.
        const Point2& other = (a == m || a == v) ? b : a;
        if (other != m && other != v && on_segment(other, m, v)) return false;
      }
    }
  }
  return true;
}

// Splices each hole into the outer ring through a bridge edge, rightmost hole first.
Ring merge_holes(const PolygonWithHoles& rings) {
  Ring outer = rings[0];
  std::vector<Ring> holes(rings.begin() + 1, rings.end());
  const auto max_x = [](const Ring& r) {
    return std::max_element(r.begin(), r.end(), [](const Point2& p, const Point2& q) { return p.x() < q.x(); });
  };
  std::sort(holes.begin(), holes.end(), [&](const Ring& p, const Ring& q) { return max_x(p)->x() > max_x(q)->x(); });

  for (std::size_t h = 0; h < holes.size(); ++h) {
    const Ring& hole = holes[h];
    const std::size_t mi = static_cast<std::size_t>(max_x(hole) - hole.begin());
    const Point2 m = hole[mi];

    std::vector<Ring> obstacles{outer};
    obstacles.insert(obstacles.end(), holes.begin() + static_cast<std::ptrdiff_t>(h), holes.end());

    std::vector<std::size_t> order(outer.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
      const double di = (outer[i] - m).squaredNorm(), dj = (outer[j] - m).squaredNorm();
      return di != dj ? di < dj : i < j;
    });
    std::size_t target = outer.size();
    for (std::size_t i : order) {
      if (!(outer[i].x() >= m.x())) continue;
      if (std::count(outer.begin(), outer.end(), outer[i]) > 1) continue;
      // The bridge must leave v into the polygon interior: inside the cone of v's two edges.
      const Point2& prev = outer[(i + outer.size() - 1) % outer.size()];
      const Point2& next = outer[(i + 1) % outer.size()];
      const Point2& v = outer[i];
      const bool convex = orient2d(prev, v, next) > 0.0;
      const bool in_cone = convex ? (orient2d(v, next, m) > 0.0 && orient2d(prev, v, m) > 0.0)
                                  : !(orient2d(v, next, m) <= 0.0 && orient2d(prev, v, m) <= 0.0);
      if (!in_cone) continue;
      if (visible(m, v, obstacles)) {
        target = i;
        break;
      }
    }
    if (target == outer.size())
      throw ShapeError("hole " + std::to_string(h + 1) + " could not be connected to the outer ring");

    Ring merged;
    merged.reserve(outer.size() + hole.size() + 2);
    merged.insert(merged.end(), outer.begin(), outer.begin() + static_cast<std::ptrdiff_t>(target) + 1);
    for (std::size_t k = 0; k <= hole.size(); ++k) merged.push_back(hole[(mi + k) % hole.size()]);
    merged.insert(merged.end(), outer.begin() + static_cast<std::ptrdiff_t>(target), outer.end());
    outer = std::move(merged);
  }
  return outer;
}

bool inside_or_on(const Point2& p, const Point2& a, const Point2& b, const Point2& c) {
  return orient2d(a, b, p) >= 0.0 && orient2d(b, c, p) >= 0.0 && orient2d(c, a, p) >= 0.0;
}

void ear_clip(const Ring& poly, std::vector<Triangle>& out) {
  std::vector<Point2> v = poly;
  std::size_t guard = 0;
  std::size_t i = 0;
  while (v.size() > 3) {
    const std::size_t n = v.size();
    const std::size_t ip = (i + n - 1) % n, in = (i + 1) % n;
    const Point2 &a = v[ip], &b = v[i], &c = v[in];
    const double turn = orient2d(a, b, c);
    bool ear = false;
    if (turn == 0.0 && (c - b).dot(b - a) >= 0.0) {
      // Straight-through vertex: dropping it changes nothing.
      v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
      guard = 0;
      if (i >= v.size()) i = 0;
      continue;
    }
    if (turn > 0.0) {
      ear = true;
      for (std::size_t k = 0; k < n && ear; ++k) {
        if (k == ip || k == i || k == in) continue;
        const Point2& p = v[k];
        if (p == a || p == b || p == c) continue;
        if (inside_or_on(p, a, b, c)) ear = false;
      }
    }
    if (ear) {
      out.emplace_back(a, b, c);
      v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
      guard = 0;
      if (i >= v.size()) i = 0;
      continue;
    }
    i = (i + 1) % n;
    if (++guard > 2 * n) throw ShapeError("ear clipping stalled; the polygon is not simple");
  }
  if (v.size() == 3 && orient2d(v[0], v[1], v[2]) > 0.0) out.emplace_back(v[0], v[1], v[2]);
}

Point2 parse_point(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ShapeError("expected a point [x, y], got " + j.dump());
  return {j[0].get<double>(), j[1].get<double>()};
}

Ring parse_ring(const nlohmann::json& j) {
  if (!j.is_array()) throw ShapeError("expected a ring of points");
  Ring r;
  for (const auto& p : j) r.push_back(parse_point(p));
  return r;
}

}  // namespace

TriangleSoup triangulate(const PolygonWithHoles& input) {
  if (input.empty()) throw ShapeError("polygon has no rings");
  PolygonWithHoles rings;
  for (const auto& r : input) rings.push_back(cleaned(r));
  check_rings(rings);
  std::vector<Triangle> tris;
  ear_clip(merge_holes(rings), tris);
  return TriangleSoup(std::move(tris));
}

TriangleSoup triangulate(const std::vector<PolygonWithHoles>& polygons) {
  std::vector<Triangle> tris;
  for (const auto& p : polygons) {
    const TriangleSoup part = triangulate(p);
    tris.insert(tris.end(), part.triangles().begin(), part.triangles().end());
  }
  return TriangleSoup(std::move(tris));
}

TriangleSoup shape_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ShapeError("shape file must hold a JSON object");
  const bool has_tri = doc.contains("triangles");
  const bool has_poly = doc.contains("polygons");
  if (has_tri == has_poly) throw ShapeError("shape file needs exactly one of \"triangles\" or \"polygons\"");

  std::optional<TriangleSoup> soup;
  if (has_tri) {
    const auto& arr = doc.at("triangles");
    if (!arr.is_array()) throw ShapeError("\"triangles\" must be an array");
    std::vector<Triangle> tris;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const auto& t = arr[i];
      if (!t.is_array() || t.size() != 3) throw ShapeError("triangle " + std::to_string(i) + " needs 3 points");
      Point2 p[3] = {parse_point(t[0]), parse_point(t[1]), parse_point(t[2])};
      if (orient2d(p[0], p[1], p[2]) < 0.0) std::swap(p[1], p[2]);
      try {
        tris.emplace_back(p[0], p[1], p[2]);
      } catch (const ShapeError& e) {
        throw ShapeError("triangle " + std::to_string(i) + ": " + e.what());
      }
    }
    soup.emplace(std::move(tris));
  } else {
    const auto& arr = doc.at("polygons");
    if (!arr.is_array() || arr.empty()) throw ShapeError("\"polygons\" must be a non-empty array");
    // [ring, ...] describes one polygon; [[ring, ...], ...] several.
    const bool nested = arr[0].is_array() && !arr[0].empty() && arr[0][0].is_array() && !arr[0][0].empty() &&
                        arr[0][0][0].is_array();
    std::vector<PolygonWithHoles> polys;
    if (nested) {
      for (const auto& p : arr) {
        PolygonWithHoles rings;
        for (const auto& r : p) rings.push_back(parse_ring(r));
        polys.push_back(std::move(rings));
      }
    } else {
      PolygonWithHoles rings;
      for (const auto& r : arr) rings.push_back(parse_ring(r));
      polys.push_back(std::move(rings));
    }
    soup.emplace(triangulate(polys));
  }
  boundary_edges(*soup);
  validate_interior_disjoint(*soup);
  return std::move(*soup);
}

TriangleSoup load_shape(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ShapeError("cannot open shape file " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ShapeError(path.string() + ": " + e.what());
  }
  try {
    return shape_from_json(doc);
  } catch (const ShapeError& e) {
    throw ShapeError(path.string() + ": " + e.what());
  }
}

nlohmann::json shape_to_json(const TriangleSoup& soup) {
  nlohmann::json tris = nlohmann::json::array();
  for (const auto& t : soup.triangles()) {
    nlohmann::json tri = nlohmann::json::array();
    for (const auto& v : t.vertices()) tri.push_back({v.x(), v.y()});
    tris.push_back(std::move(tri));
  }
  return {{"triangles", std::move(tris)}};
}

}  // namespace probmatch
