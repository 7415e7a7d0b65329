#include "cfree/collision.hpp"

#include "cfree/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace cfree {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double cross(const Point2& a, const Point2& b) { return a.x() * b.y() - a.y() * b.x(); }

double point_segment_distance(const Point2& p, const Point2& a,
                              const Point2& b) {
  const Point2 ab = b - a;
  const double len2 = ab.squaredNorm();
  double t = len2 > 0.0 ? (p - a).dot(ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return (a + t * ab - p).norm();
}

Point2 closest_on_segment(const Point2& p, const Point2& a, const Point2& b) {
  const Point2 ab = b - a;
  const double len2 = ab.squaredNorm();
  const double t = len2 > 0.0 ? std::clamp((p - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
  return a + t * ab;
}

int orientation(const Point2& a, const Point2& b, const Point2& c) {
  const double v = cross(b - a, c - a);
  return (v > 0.0) - (v < 0.0);
}

bool on_segment(const Point2& a, const Point2& b, const Point2& p) {
  return std::min(a.x(), b.x()) <= p.x() && p.x() <= std::max(a.x(), b.x()) &&
         std::min(a.y(), b.y()) <= p.y() && p.y() <= std::max(a.y(), b.y());
}

bool segments_intersect(const Point2& p0, const Point2& p1, const Point2& q0,
                        const Point2& q1) {
  const int o1 = orientation(p0, p1, q0);
  const int o2 = orientation(p0, p1, q1);
  const int o3 = orientation(q0, q1, p0);
  const int o4 = orientation(q0, q1, p1);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(p0, p1, q0)) return true;
  if (o2 == 0 && on_segment(p0, p1, q1)) return true;
  if (o3 == 0 && on_segment(q0, q1, p0)) return true;
  if (o4 == 0 && on_segment(q0, q1, p1)) return true;
  return false;
}

bool polygon_contains(const ConvexPolygon& poly, const Point2& p) {
  const auto& v = poly.vertices;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (cross(v[(i + 1) % v.size()] - v[i], p - v[i]) < 0.0) return false;
  }
  return true;
}

ConvexPolygon box_as_polygon(const AxisBox& box) {
  return ConvexPolygon{{Point2(box.lower[0], box.lower[1]),
                        Point2(box.upper[0], box.lower[1]),
                        Point2(box.upper[0], box.upper[1]),
                        Point2(box.lower[0], box.upper[1])}};
}

double segment_polygon_distance(const ConvexPolygon& poly, const Point2& p0,
                                const Point2& p1) {
  if (polygon_contains(poly, p0) || polygon_contains(poly, p1)) return 0.0;
  const auto& v = poly.vertices;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < v.size(); ++i) {
    best = std::min(best,
                    segment_segment_distance(p0, p1, v[i], v[(i + 1) % v.size()]));
  }
  return best;
}

}  // namespace

double segment_segment_distance(const Point2& p0, const Point2& p1,
                                const Point2& q0, const Point2& q1) {
  if (segments_intersect(p0, p1, q0, q1)) return 0.0;
  return std::min({point_segment_distance(p0, q0, q1),
                   point_segment_distance(p1, q0, q1),
                   point_segment_distance(q0, p0, p1),
                   point_segment_distance(q1, p0, p1)});
}

ConvexObstacle make_obstacle(ConvexObstacle obstacle) {
  std::visit(
      Overloaded{
          [](Ball& b) {
            if (b.center.size() == 0) throw GeometryError("ball needs a center");
            if (!(b.radius > 0.0)) throw GeometryError("ball radius must be positive");
          },
          [](AxisBox& b) {
            check_dim("box bounds", b.lower.size(), b.upper.size());
            if (b.lower.size() == 0) throw GeometryError("box needs dimension >= 1");
            if ((b.lower.array() > b.upper.array()).any()) {
              throw GeometryError("box lower bound exceeds upper bound");
            }
          },
          [](ConvexPolygon& p) {
            auto& v = p.vertices;
            if (v.size() < 3) throw GeometryError("polygon needs >= 3 vertices");
            double area2 = 0.0;
            for (std::size_t i = 0; i < v.size(); ++i) {
              area2 += cross(v[i], v[(i + 1) % v.size()]);
            }
            if (area2 < 0.0) std::reverse(v.begin(), v.end());
            for (std::size_t i = 0; i < v.size(); ++i) {
              const Point2& a = v[i];
              const Point2& b = v[(i + 1) % v.size()];
              const Point2& c = v[(i + 2) % v.size()];
              if (cross(b - a, c - b) < 0.0) {
                throw GeometryError("polygon is not convex");
              }
            }
          }},
      obstacle);
  return obstacle;
}

int obstacle_dim(const ConvexObstacle& obstacle) {
  return std::visit(
      Overloaded{[](const Ball& b) { return static_cast<int>(b.center.size()); },
                 [](const AxisBox& b) { return static_cast<int>(b.lower.size()); },
                 [](const ConvexPolygon&) { return 2; }},
      obstacle);
}

bool obstacle_contains(const ConvexObstacle& obstacle, const Vector& q) {
  check_dim("obstacle_contains", obstacle_dim(obstacle), q.size());
  return std::visit(
      Overloaded{[&](const Ball& b) {
                   return (q - b.center).squaredNorm() <= b.radius * b.radius;
                 },
                 [&](const AxisBox& b) {
                   return (q.array() >= b.lower.array()).all() &&
                          (q.array() <= b.upper.array()).all();
                 },
                 [&](const ConvexPolygon& p) {
                   return polygon_contains(p, Point2(q[0], q[1]));
                 }},
      obstacle);
}

Vector project_onto(const ConvexObstacle& obstacle, const Vector& q) {
  check_dim("project_onto", obstacle_dim(obstacle), q.size());
  return std::visit(
      Overloaded{[&](const Ball& b) -> Vector {
                   const Vector r = q - b.center;
                   const double n = r.norm();
                   if (n <= b.radius) return q;
                   return b.center + (b.radius / n) * r;
                 },
                 [&](const AxisBox& b) -> Vector {
                   return q.cwiseMax(b.lower).cwiseMin(b.upper);
                 },
                 [&](const ConvexPolygon& p) -> Vector {
                   const Point2 x(q[0], q[1]);
                   if (polygon_contains(p, x)) return q;
                   const auto& v = p.vertices;
                   Point2 best = v[0];
                   double best_d = std::numeric_limits<double>::infinity();
                   for (std::size_t i = 0; i < v.size(); ++i) {
                     const Point2 c = closest_on_segment(x, v[i], v[(i + 1) % v.size()]);
                     const double d = (c - x).squaredNorm();
                     if (d < best_d) {
                       best_d = d;
                       best = c;
                     }
                   }
                   return Vector(best);
                 }},
      obstacle);
}

double segment_obstacle_distance(const ConvexObstacle& obstacle,
                                 const Point2& p0, const Point2& p1) {
  if (obstacle_dim(obstacle) != 2) {
    throw GeometryError("segment distance needs a planar obstacle");
  }
  return std::visit(
      Overloaded{[&](const Ball& b) {
                   return std::max(0.0, point_segment_distance(
                                            Point2(b.center[0], b.center[1]), p0, p1) -
                                            b.radius);
                 },
                 [&](const AxisBox& b) {
                   return segment_polygon_distance(box_as_polygon(b), p0, p1);
                 },
                 [&](const ConvexPolygon& p) {
                   return segment_polygon_distance(p, p0, p1);
                 }},
      obstacle);
}

// ---------------------------------------------------------------------------

PointRobotWorld::PointRobotWorld(int dim, std::vector<ConvexObstacle> obstacles)
    : dim_(dim) {
  if (dim < 1) throw GeometryError("world dimension must be >= 1");
  obstacles_.reserve(obstacles.size());
  for (auto& o : obstacles) {
    check_dim("PointRobotWorld obstacle", dim, obstacle_dim(o));
    obstacles_.push_back(make_obstacle(std::move(o)));
  }
}

bool PointRobotWorld::check(const Vector& q) const {
  check_dim("PointRobotWorld::check", dim_, q.size());
  return std::any_of(obstacles_.begin(), obstacles_.end(),
                     [&](const ConvexObstacle& o) { return obstacle_contains(o, q); });
}

std::vector<CollisionPair> PointRobotWorld::pairs() const {
  std::vector<CollisionPair> out;
  for (std::size_t j = 0; j < obstacles_.size(); ++j) {
    out.push_back({"robot", "obstacle" + std::to_string(j)});
  }
  return out;
}

PlanarArmWorld::PlanarArmWorld(Params params) : params_(std::move(params)) {
  if (params_.link_lengths.empty()) throw GeometryError("arm needs >= 1 link");
  for (double l : params_.link_lengths) {
    if (!(l > 0.0)) throw GeometryError("link lengths must be positive");
  }
  if (params_.link_radius < 0.0) throw GeometryError("link radius must be >= 0");
  for (auto& o : params_.obstacles) {
    check_dim("arm obstacle", 2, obstacle_dim(o));
    o = make_obstacle(std::move(o));
  }
  const std::size_t n = params_.link_lengths.size();
  if (params_.joint_limits.empty()) {
    params_.joint_limits.assign(n, {-std::numbers::pi, std::numbers::pi});
  }
  check_dim("joint limits", static_cast<long>(n),
            static_cast<long>(params_.joint_limits.size()));
  for (const auto& [lo, hi] : params_.joint_limits) {
    if (!(lo < hi)) throw GeometryError("joint limit lower bound must be below upper");
  }
}

std::vector<Point2> PlanarArmWorld::forward_kinematics(const Vector& q) const {
  check_dim("PlanarArmWorld::forward_kinematics", dim(), q.size());
  std::vector<Point2> joints;
  joints.reserve(q.size() + 1);
  joints.push_back(params_.base);
  double angle = 0.0;
  for (Eigen::Index i = 0; i < q.size(); ++i) {
    angle += q[i];
    const double l = params_.link_lengths[static_cast<std::size_t>(i)];
    joints.push_back(joints.back() + l * Point2(std::cos(angle), std::sin(angle)));
  }
  return joints;
}

bool PlanarArmWorld::check(const Vector& q) const {
  const std::vector<Point2> p = forward_kinematics(q);
  const std::size_t n = params_.link_lengths.size();
  const double r = params_.link_radius;
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& o : params_.obstacles) {
      if (segment_obstacle_distance(o, p[i], p[i + 1]) <= r) return true;
    }
  }
  if (params_.self_collision) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 2; j < n; ++j) {
        if (segment_segment_distance(p[i], p[i + 1], p[j], p[j + 1]) <= 2.0 * r) {
          return true;
        }
      }
    }
  }
  return false;
}

std::vector<CollisionPair> PlanarArmWorld::pairs() const {
  std::vector<CollisionPair> out;
  const std::size_t n = params_.link_lengths.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < params_.obstacles.size(); ++j) {
      out.push_back({"link" + std::to_string(i), "obstacle" + std::to_string(j)});
    }
  }
  if (params_.self_collision) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 2; j < n; ++j) {
        out.push_back({"link" + std::to_string(i), "link" + std::to_string(j)});
      }
    }
  }
  return out;
}

HPolytope PlanarArmWorld::joint_limit_domain() const {
  const std::size_t n = params_.joint_limits.size();
  Vector lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    lo[static_cast<Eigen::Index>(i)] = params_.joint_limits[i].first;
    hi[static_cast<Eigen::Index>(i)] = params_.joint_limits[i].second;
  }
  return HPolytope::box(lo, hi);
}

FunctionWorld::FunctionWorld(int dim, std::function<bool(const Vector&)> predicate,
                             std::string name)
    : dim_(dim), predicate_(std::move(predicate)), name_(std::move(name)) {}

bool FunctionWorld::check(const Vector& q) const {
  check_dim("FunctionWorld::check", dim_, q.size());
  return predicate_(q);
}

std::vector<CollisionPair> FunctionWorld::pairs() const {
  return {{"robot", name_}};
}

// ---------------------------------------------------------------------------

std::vector<bool> check_batch(const CollisionWorld& world,
                              const std::vector<Vector>& qs) {
  for (const auto& q : qs) check_dim("check_batch", world.dim(), q.size());
  std::vector<char> flags(qs.size(), 0);
  parallel_for(qs.size(), [&](std::size_t i) { flags[i] = world.check(qs[i]) ? 1 : 0; });
  return std::vector<bool>(flags.begin(), flags.end());
}

FractionEstimate fraction_in_collision(const CollisionWorld& world,
                                       const HPolytope& P, std::size_t n,
                                       const SamplerConfig& cfg) {
  check_dim("fraction_in_collision", world.dim(), P.dim());
  if (n < 1) throw SamplerError("fraction_in_collision needs n >= 1");
  const std::vector<Vector> samples = hit_and_run_batch(P, n, cfg);
  const std::vector<bool> flags = check_batch(world, samples);
  const auto hits = static_cast<double>(std::count(flags.begin(), flags.end(), true));
  FractionEstimate out;
  out.n = n;
  out.estimate = hits / static_cast<double>(n);
  out.half_width =
      1.96 * std::sqrt(out.estimate * (1.0 - out.estimate) / static_cast<double>(n));
  return out;
}

}  // namespace cfree
