#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "probmatch/geometry.hpp"

namespace probmatch {

using Ring = std::vector<Point2>;

/// One polygon: outer ring counterclockwise, then clockwise holes.
using PolygonWithHoles = std::vector<Ring>;

/// Ear clipping of a simple polygon with holes; holes are joined to the outer
/// ring by bridge edges first. Throws ShapeError naming the offending ring
/// for wrong orientation or self-intersection.
TriangleSoup triangulate(const PolygonWithHoles& rings);
TriangleSoup triangulate(const std::vector<PolygonWithHoles>& polygons);

/// Parses {"triangles": [[[x,y],[x,y],[x,y]], ...]} or
/// {"polygons": [ring, ...]} / {"polygons": [[ring, ...], ...]}.
/// Clockwise input triangles are reoriented. Runs the edge-multiplicity and
/// randomized interior-disjointness checks.
TriangleSoup shape_from_json(const nlohmann::json& doc);
TriangleSoup load_shape(const std::filesystem::path& path);

nlohmann::json shape_to_json(const TriangleSoup& soup);

}  // namespace probmatch
