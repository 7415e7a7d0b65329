#pragma once

#include "cfree/collision.hpp"
#include "cfree/geometry.hpp"
#include "cfree/linprog.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cfree {

/// Occupancy of cell centers of an nx-by-ny grid over a 2D box, row-major,
/// row 0 at the bottom (lowest y).
std::vector<bool> rasterize_obstacles(const CollisionWorld& world, const BoundingBox& box,
                                      int nx, int ny);

/// Vertices of a bounded 2D polytope in counter-clockwise order.
std::vector<Vector> polygon_vertices_2d(const HPolytope& P);

struct SvgOptions {
  int width = 400;
  int height = 400;
  int raster = 400;  // cells per axis for the obstacle image
};

/// Renders domain, obstacles, regions (class region-<i>), their ellipsoids
/// and an optional seed marker.
std::string render_svg(const HPolytope& domain, const CollisionWorld& world,
                       const std::vector<HPolytope>& regions,
                       const std::vector<Ellipsoid>& ellipsoids,
                       const std::vector<Vector>& seeds, const SvgOptions& opts = {});

}  // namespace cfree
