#include "cfree/convex_iris.hpp"

#include "cfree/iris.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <variant>

namespace cfree {
namespace {

constexpr double kStepTol = 1e-9;
constexpr int kMaxGradientSteps = 1000000;

// min over the obstacle of aᵀx.
double obstacle_min_support(const ConvexObstacle& obstacle, const Vector& a) {
  if (const auto* ball = std::get_if<Ball>(&obstacle)) {
    return a.dot(ball->center) - ball->radius * a.norm();
  }
  if (const auto* box = std::get_if<AxisBox>(&obstacle)) {
    double v = 0.0;
    for (Eigen::Index j = 0; j < a.size(); ++j) {
      v += std::min(a[j] * box->lower[j], a[j] * box->upper[j]);
    }
    return v;
  }
  const auto& poly = std::get<ConvexPolygon>(obstacle);
  double v = std::numeric_limits<double>::infinity();
  for (const auto& p : poly.vertices) v = std::min(v, a[0] * p.x() + a[1] * p.y());
  return v;
}

bool isotropic(const Matrix& E) {
  const double s = E(0, 0);
  return (E - s * Matrix::Identity(E.rows(), E.cols())).cwiseAbs().maxCoeff() <=
         1e-14 * std::abs(s);
}

}  // namespace

Vector closest_point_in_metric(const ConvexObstacle& obstacle, const Ellipsoid& e) {
  check_dim("closest_point_in_metric", e.dim(), obstacle_dim(obstacle));
  const Vector& c = e.center();
  if (std::holds_alternative<Ball>(obstacle) && isotropic(e.E())) {
    return project_onto(obstacle, c);
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(e.E());
  const double step = 1.0 / (2.0 * eig.eigenvalues().maxCoeff());
  Vector x = project_onto(obstacle, c);
  for (int it = 0; it < kMaxGradientSteps; ++it) {
    const Vector next = project_onto(obstacle, x - step * 2.0 * (e.E() * (x - c)));
    const double moved = (next - x).norm();
    x = next;
    if (moved <= kStepTol) break;
  }
  return x;
}

HPolytope convex_iris_separating_planes(const std::vector<ConvexObstacle>& obstacles,
                                        const Ellipsoid& e, const HPolytope& domain) {
  check_dim("convex_iris_separating_planes", domain.dim(), e.dim());
  HPolytope P = domain;
  for (const auto& obstacle : obstacles) {
    if (obstacle_contains(obstacle, e.center())) {
      throw IrisError("ellipsoid center lies inside an obstacle");
    }
    const Vector x_star = closest_point_in_metric(obstacle, e);
    Vector a = e.E() * (x_star - e.center());
    a /= a.norm();
    // The obstacle's own support keeps the plane exactly separating even when
    // x_star is only accurate to the solver tolerance.
    const double b = std::min(a.dot(x_star), obstacle_min_support(obstacle, a));
    P = P.add_face(Hyperplane(a, b));
  }
  return P;
}

ConvexIrisResult convex_iris_grow(const HPolytope& domain, const Vector& seed,
                                  const std::vector<ConvexObstacle>& obstacles,
                                  const ConvexIrisOptions& opts) {
  check_dim("convex_iris_grow", domain.dim(), seed.size());
  if (!domain.strictly_contains(seed)) throw IrisError("seed is not inside the domain");
  Ellipsoid e = Ellipsoid::ball(seed, opts.r_start);
  ConvexIrisResult result{domain, e, 0};
  double previous = -std::numeric_limits<double>::infinity();
  for (int i = 1; i <= opts.max_iterations; ++i) {
    result.polytope = convex_iris_separating_planes(obstacles, e, domain);
    result.iterations = i;
    const MvieResult mvie = inscribed_ellipsoid(result.polytope, opts.mvie);
    result.ellipsoid = mvie.ellipsoid;
    if (std::exp(mvie.log_volume_proxy - previous) - 1.0 < opts.termination_threshold) {
      break;
    }
    previous = mvie.log_volume_proxy;
    e = mvie.ellipsoid;
  }
  return result;
}

}  // namespace cfree
