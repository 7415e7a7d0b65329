#include "cfree/collision.hpp"
#include "cfree/parallel.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace cfree;

namespace {

Vector v2(double x, double y) {
  Vector v(2);
  v << x, y;
  return v;
}

SamplerConfig config(const Vector& start, std::uint64_t seed) {
  SamplerConfig cfg;
  cfg.start = start;
  cfg.rng_seed = seed;
  return cfg;
}

}  // namespace

TEST(PointRobot, DiskContainment) {
  const PointRobotWorld w(2, {make_obstacle(Ball{v2(3, 0), 1})});
  EXPECT_TRUE(w.check(v2(3, 0)));
  EXPECT_FALSE(w.check(v2(0, 0)));
  EXPECT_TRUE(w.check(v2(2, 0)));  // closed set
}

TEST(PointRobot, EmptyWorldIsFree) {
  const PointRobotWorld w(2, {});
  std::vector<Vector> qs{v2(0, 0), v2(5, -3), v2(1e6, 2)};
  for (bool b : check_batch(w, qs)) EXPECT_FALSE(b);
  EXPECT_TRUE(w.pairs().empty());
}

TEST(PointRobot, PolygonAndBox) {
  ConvexPolygon tri{{Point2(0, 0), Point2(0, 1), Point2(1, 0)}};  // clockwise input
  const PointRobotWorld w(2, {make_obstacle(tri),
                              make_obstacle(AxisBox{v2(2, 2), v2(3, 3)})});
  EXPECT_TRUE(w.check(v2(0.2, 0.2)));
  EXPECT_FALSE(w.check(v2(0.6, 0.6)));
  EXPECT_TRUE(w.check(v2(2.5, 2.9)));
  EXPECT_FALSE(w.check(v2(3.1, 2.5)));
  EXPECT_EQ(w.pairs().size(), 2u);
}

TEST(Obstacles, Validation) {
  EXPECT_THROW(make_obstacle(Ball{v2(0, 0), -1}), GeometryError);
  EXPECT_THROW(make_obstacle(AxisBox{v2(1, 0), v2(0, 1)}), GeometryError);
  ConvexPolygon bowtie{{Point2(0, 0), Point2(1, 1), Point2(1, 0), Point2(0, 1)}};
  EXPECT_THROW(make_obstacle(bowtie), GeometryError);
}

TEST(Obstacles, Projection) {
  const auto disk = make_obstacle(Ball{v2(3, 0), 1});
  EXPECT_TRUE(project_onto(disk, v2(0, 0)).isApprox(v2(2, 0), 1e-15));
  const auto box = make_obstacle(AxisBox{v2(2, -1), v2(3, 1)});
  EXPECT_TRUE(project_onto(box, v2(0, 0.5)).isApprox(v2(2, 0.5), 1e-15));
  ConvexPolygon sq{{Point2(2, -1), Point2(3, -1), Point2(3, 1), Point2(2, 1)}};
  EXPECT_TRUE(project_onto(make_obstacle(sq), v2(0, 3)).isApprox(v2(2, 1), 1e-12));
}

TEST(SegmentDistance, Basics) {
  EXPECT_NEAR(segment_segment_distance(Point2(0, 0), Point2(1, 0), Point2(0, 1), Point2(1, 1)),
              1.0, 1e-15);
  EXPECT_NEAR(segment_segment_distance(Point2(0, 0), Point2(1, 1), Point2(0, 1), Point2(1, 0)),
              0.0, 1e-15);
  const auto disk = make_obstacle(Ball{v2(0.5, 1), 0.25});
  EXPECT_NEAR(segment_obstacle_distance(disk, Point2(0, 0), Point2(1, 0)), 0.75, 1e-15);
}

TEST(PlanarArm, ExtendedArmReachesDisk) {
  PlanarArmWorld::Params p;
  p.link_lengths = {1, 1};
  p.obstacles = {make_obstacle(Ball{v2(2, 0), 0.1})};
  const PlanarArmWorld arm(p);
  EXPECT_TRUE(arm.check(v2(0, 0)));
  const auto fk = arm.forward_kinematics(v2(0, 0));
  ASSERT_EQ(fk.size(), 3u);
  EXPECT_NEAR((fk[2] - Point2(2, 0)).norm(), 0.0, 1e-15);
  EXPECT_FALSE(arm.check(v2(std::numbers::pi / 2, 0)));
}

TEST(PlanarArm, ForwardKinematicsAccumulatesAngles) {
  PlanarArmWorld::Params p;
  p.link_lengths = {1, 2};
  p.base = Point2(1, 1);
  const PlanarArmWorld arm(p);
  const auto fk = arm.forward_kinematics(v2(std::numbers::pi / 2, -std::numbers::pi / 2));
  EXPECT_NEAR((fk[1] - Point2(1, 2)).norm(), 0.0, 1e-12);
  EXPECT_NEAR((fk[2] - Point2(3, 2)).norm(), 0.0, 1e-12);
}

TEST(PlanarArm, SelfCollisionIsOptIn) {
  PlanarArmWorld::Params p;
  p.link_lengths = {1, 1, 1};
  p.link_radius = 0.05;
  const Vector folded = Vector::Constant(3, 0);
  Vector q(3);
  q << 0, 2.8, 2.8;  // third link folds back across the first
  EXPECT_FALSE(PlanarArmWorld(p).check(q));
  p.self_collision = true;
  const PlanarArmWorld arm(p);
  EXPECT_TRUE(arm.check(q));
  EXPECT_FALSE(arm.check(folded));
  EXPECT_EQ(arm.pairs().size(), 1u);
}

TEST(PlanarArm, JointLimitDomain) {
  PlanarArmWorld::Params p;
  p.link_lengths = {1, 1};
  const PlanarArmWorld arm(p);
  const HPolytope D = arm.joint_limit_domain();
  EXPECT_TRUE(D.contains(v2(std::numbers::pi, -std::numbers::pi)));
  EXPECT_FALSE(D.contains(v2(3.2, 0)));
}

TEST(CheckBatch, MatchesSequentialAndIsPure) {
  PlanarArmWorld::Params p;
  p.link_lengths = {1, 1};
  p.link_radius = 0.05;
  p.obstacles = {make_obstacle(Ball{v2(1.2, 0.6), 0.3})};
  const PlanarArmWorld arm(p);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-3.14, 3.14);
  std::vector<Vector> qs;
  for (int i = 0; i < 2000; ++i) qs.push_back(v2(u(rng), u(rng)));
  for (int w : {1, 4}) {
    set_worker_count(w);
    const auto batch = check_batch(arm, qs);
    for (std::size_t i = 0; i < qs.size(); ++i) {
      EXPECT_EQ(batch[i], arm.check(qs[i]));
      EXPECT_EQ(arm.check(qs[i]), arm.check(qs[i]));
    }
  }
  set_worker_count(0);
}

TEST(Fraction, FreeWorldIsZero) {
  const PointRobotWorld w(2, {});
  const auto f = fraction_in_collision(w, HPolytope::box(v2(0, 0), v2(1, 1)), 1000,
                                       config(v2(0.5, 0.5), 1));
  EXPECT_EQ(f.estimate, 0.0);
  EXPECT_EQ(f.half_width, 0.0);
}

TEST(Fraction, HalfBoxObstacle) {
  const PointRobotWorld w(2, {make_obstacle(AxisBox{v2(0, 0), v2(0.5, 1)})});
  const auto f = fraction_in_collision(w, HPolytope::box(v2(0, 0), v2(1, 1)), 100000,
                                       config(v2(0.75, 0.5), 3));
  EXPECT_NEAR(f.estimate, 0.5, 0.01);
  EXPECT_LE(f.half_width, 0.01);
}

TEST(Fraction, DiskAreaRatio) {
  // Disk of radius 0.3 centered in [0,1]²: exact ratio 0.09π.
  const PointRobotWorld w(2, {make_obstacle(Ball{v2(0.5, 0.5), 0.3})});
  const auto f = fraction_in_collision(w, HPolytope::box(v2(0, 0), v2(1, 1)), 100000,
                                       config(v2(0.05, 0.05), 4));
  const double exact = 0.09 * std::numbers::pi;
  const double se = std::sqrt(exact * (1 - exact) / 1e5);
  EXPECT_NEAR(f.estimate, exact, 3 * se);
}

TEST(Fraction, InsideObstacleIsOne) {
  const PointRobotWorld w(2, {make_obstacle(Ball{v2(0, 0), 5})});
  const auto f = fraction_in_collision(w, HPolytope::box(v2(-1, -1), v2(1, 1)), 500,
                                       config(v2(0, 0), 2));
  EXPECT_EQ(f.estimate, 1.0);
}
