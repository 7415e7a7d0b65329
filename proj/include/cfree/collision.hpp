#pragma once

#include "cfree/geometry.hpp"
#include "cfree/sampling.hpp"

#include <functional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace cfree {

using Point2 = Eigen::Vector2d;

/// Closed Euclidean ball (a disk in 2D).
struct Ball {
  Vector center;
  double radius = 0.0;
};

struct AxisBox {
  Vector lower;
  Vector upper;
};

/// Planar convex polygon; vertices are stored counter-clockwise.
struct ConvexPolygon {
  std::vector<Point2> vertices;
};

using ConvexObstacle = std::variant<Ball, AxisBox, ConvexPolygon>;

/// Validates and normalizes an obstacle (polygon orientation, positive radius,
/// ordered box bounds). Throws GeometryError.
ConvexObstacle make_obstacle(ConvexObstacle obstacle);

int obstacle_dim(const ConvexObstacle& obstacle);
bool obstacle_contains(const ConvexObstacle& obstacle, const Vector& q);

/// Euclidean projection onto the obstacle.
Vector project_onto(const ConvexObstacle& obstacle, const Vector& q);

/// Euclidean distance between the segment [p0, p1] and a planar obstacle.
double segment_obstacle_distance(const ConvexObstacle& obstacle,
                                 const Point2& p0, const Point2& p1);

double segment_segment_distance(const Point2& p0, const Point2& p1,
                                const Point2& q0, const Point2& q1);

struct CollisionPair {
  std::string first;
  std::string second;
};

/// Implicit configuration-space obstacle oracle. check must be pure and safe
/// to call from many threads at once.
class CollisionWorld {
 public:
  virtual ~CollisionWorld() = default;
  virtual int dim() const = 0;
  /// True iff some valid collision pair intersects at q.
  virtual bool check(const Vector& q) const = 0;
  virtual std::vector<CollisionPair> pairs() const = 0;
};

/// Configuration space equals task space; obstacles are given directly.
class PointRobotWorld final : public CollisionWorld {
 public:
  PointRobotWorld(int dim, std::vector<ConvexObstacle> obstacles);

  int dim() const override { return dim_; }
  bool check(const Vector& q) const override;
  std::vector<CollisionPair> pairs() const override;
  const std::vector<ConvexObstacle>& obstacles() const { return obstacles_; }

 private:
  int dim_;
  std::vector<ConvexObstacle> obstacles_;
};

/// Serial planar arm with capsule links rotating about revolute joints.
class PlanarArmWorld final : public CollisionWorld {
 public:
  struct Params {
    std::vector<double> link_lengths;
    double link_radius = 0.0;
    Point2 base = Point2::Zero();
    std::vector<ConvexObstacle> obstacles;  // disks, 2D boxes, polygons
    /// One [lo, hi] interval per joint; empty means [-pi, pi] everywhere.
    std::vector<std::pair<double, double>> joint_limits;
    /// Adds link pairs (i, j) with j >= i + 2 to the checked pairs.
    bool self_collision = false;
  };

  explicit PlanarArmWorld(Params params);

  int dim() const override { return static_cast<int>(params_.link_lengths.size()); }
  bool check(const Vector& q) const override;
  std::vector<CollisionPair> pairs() const override;

  /// Joint positions p_0 = base, ..., p_n = end effector.
  std::vector<Point2> forward_kinematics(const Vector& q) const;

  /// The joint-limit box.
  HPolytope joint_limit_domain() const;

  const Params& params() const { return params_; }

 private:
  Params params_;
};

/// Wraps an arbitrary pure predicate.
class FunctionWorld final : public CollisionWorld {
 public:
  FunctionWorld(int dim, std::function<bool(const Vector&)> predicate,
                std::string name = "custom");

  int dim() const override { return dim_; }
  bool check(const Vector& q) const override;
  std::vector<CollisionPair> pairs() const override;

 private:
  int dim_;
  std::function<bool(const Vector&)> predicate_;
  std::string name_;
};

/// Element i is world.check(qs[i]); evaluated on concurrent workers.
std::vector<bool> check_batch(const CollisionWorld& world,
                              const std::vector<Vector>& qs);

struct FractionEstimate {
  double estimate = 0.0;
  double half_width = 0.0;  // 1.96 sqrt(p(1-p)/n)
  std::size_t n = 0;
};

/// Monte Carlo estimate of the fraction of P in collision from n hit-and-run
/// samples.
FractionEstimate fraction_in_collision(const CollisionWorld& world,
                                       const HPolytope& P, std::size_t n,
                                       const SamplerConfig& cfg);

}  // namespace cfree
