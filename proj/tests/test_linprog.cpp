#include "cfree/linprog.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace cfree;

TEST(Linprog, BoxMaximum) {
  const HPolytope P = HPolytope::box(Vector::Constant(2, -1), Vector::Constant(2, 2));
  Vector c(2);
  c << 1, 1;
  const LpResult r = lp_maximize(c, P.A(), P.b());
  ASSERT_EQ(r.status, LpStatus::kOptimal);
  EXPECT_NEAR(r.value, 4.0, 1e-9);
}

TEST(Linprog, Unbounded) {
  Matrix A(1, 2);
  A << 1, 0;
  Vector b(1);
  b << 1;
  Vector c(2);
  c << 0, 1;
  EXPECT_EQ(lp_maximize(c, A, b).status, LpStatus::kUnbounded);
  EXPECT_THROW(bounding_box(HPolytope(A, b)), UnboundedPolytope);
}

TEST(Linprog, Infeasible) {
  Matrix A(2, 1);
  A << 1, -1;
  Vector b(2);
  b << -1, -1;  // x <= -1 and x >= 1
  Vector c(1);
  c << 1;
  EXPECT_EQ(lp_maximize(c, A, b).status, LpStatus::kInfeasible);
  EXPECT_THROW(bounding_box(HPolytope(A, b)), EmptyPolytope);
}

TEST(Linprog, ChebyshevBallOfSimplex) {
  Matrix A(3, 2);
  A << -1, 0, 0, -1, 1, 1;
  Vector b(3);
  b << 0, 0, 1;
  const ChebyshevBall ball = chebyshev_ball(HPolytope(A, b));
  const double r = 1.0 / (2.0 + std::sqrt(2.0));  // inradius of the unit right triangle
  EXPECT_NEAR(ball.radius, r, 1e-9);
  EXPECT_NEAR(ball.center[0], r, 1e-9);
  EXPECT_NEAR(ball.center[1], r, 1e-9);
}

TEST(Linprog, BoundingBoxOfRotatedSquare) {
  Matrix A(4, 2);
  A << 1, 1, 1, -1, -1, 1, -1, -1;
  const HPolytope P(A, Vector::Ones(4));
  const BoundingBox box = bounding_box(P);
  EXPECT_NEAR(box.lower[0], -1, 1e-9);
  EXPECT_NEAR(box.upper[1], 1, 1e-9);
}

TEST(Linprog, FlatPolytopeHasNoChebyshevBall) {
  Matrix A(4, 1);
  A << 1, -1, 1, -1;
  Vector b(4);
  b << 0, 0, 1, 1;
  EXPECT_THROW(chebyshev_ball(HPolytope(A, b)), EmptyPolytope);
}
