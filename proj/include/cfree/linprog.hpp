#pragma once

#include "cfree/geometry.hpp"

namespace cfree {

class UnboundedPolytope : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

class EmptyPolytope : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

enum class LpStatus { kOptimal, kUnbounded, kInfeasible };

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  Vector x;
  double value = 0.0;
};

/// maximize cᵀx subject to A x <= b with x free. Dense two-phase simplex with
/// Bland's rule; intended for the small problems that appear here (tens of
/// variables, a few hundred rows).
LpResult lp_maximize(const Vector& c, const Matrix& A, const Vector& b);

struct BoundingBox {
  Vector lower;
  Vector upper;
};

/// Coordinate-wise support maximization over the faces. Throws
/// UnboundedPolytope or EmptyPolytope.
BoundingBox bounding_box(const HPolytope& P);

struct ChebyshevBall {
  Vector center;
  double radius = 0.0;
};

/// Largest Euclidean ball inside P. Throws EmptyPolytope when P has no
/// interior and UnboundedPolytope when the ball radius is unbounded.
ChebyshevBall chebyshev_ball(const HPolytope& P);

}  // namespace cfree
