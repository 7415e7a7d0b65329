#pragma once

#include "cfree/collision.hpp"
#include "cfree/geometry.hpp"
#include "cfree/mvie.hpp"

#include <vector>

namespace cfree {

/// argmin over x in the obstacle of ‖x - c‖²_E. Closed form for balls under
/// an isotropic metric, projected gradient otherwise (stops at ‖Δx‖ <= 1e-9).
Vector closest_point_in_metric(const ConvexObstacle& obstacle, const Ellipsoid& e);

/// One IRIS separating-planes pass for explicit convex obstacles: for each
/// obstacle, the hyperplane through its E-closest point with normal
/// E(x* - c). No stepback. Throws IrisError if c lies inside an obstacle.
HPolytope convex_iris_separating_planes(const std::vector<ConvexObstacle>& obstacles,
                                        const Ellipsoid& e, const HPolytope& domain);

struct ConvexIrisOptions {
  int max_iterations = 10;
  double termination_threshold = 2e-2;
  double r_start = 1e-2;
  MvieOptions mvie;
};

struct ConvexIrisResult {
  HPolytope polytope;
  Ellipsoid ellipsoid;
  int iterations = 0;
};

/// Alternates convex separating planes and inscribed ellipsoids.
ConvexIrisResult convex_iris_grow(const HPolytope& domain, const Vector& seed,
                                  const std::vector<ConvexObstacle>& obstacles,
                                  const ConvexIrisOptions& opts = {});

}  // namespace cfree
