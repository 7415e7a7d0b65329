#pragma once

#include "cfree/geometry.hpp"

namespace cfree {

struct MvieOptions {
  /// Stop once the barrier duality-gap bound on log det falls below
  /// tol * max(1, |log det|).
  double tol = 1e-8;
  /// Total Newton-step budget across all barrier stages.
  int max_iterations = 200;
};

struct MvieResult {
  Ellipsoid ellipsoid;
  /// log det of the shape factor B, i.e. ellipsoid_volume_proxy(ellipsoid).
  double log_volume_proxy = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Maximum-volume ellipsoid {B u + d : ‖u‖ <= 1} inside P, found by a
/// log-barrier interior-point method on the parameters (B, d) subject to
/// ‖B a_i‖ + a_iᵀd <= b_i. Throws EmptyPolytope or UnboundedPolytope.
MvieResult inscribed_ellipsoid(const HPolytope& P, const MvieOptions& opts = {});

}  // namespace cfree
