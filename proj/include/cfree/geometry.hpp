#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <utility>

namespace cfree {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Absolute slack allowed by polytope membership; boundary points are inside.
inline constexpr double kMembershipTol = 1e-9;
inline constexpr double kSymmetryTol = 1e-9;
inline constexpr double kNormTol = 1e-9;

class DimensionMismatch : public std::invalid_argument {
 public:
  DimensionMismatch(const std::string& what, long expected, long got);
};

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Closed halfspace {q : aᵀq <= b} with a unit normal.
class Hyperplane {
 public:
  /// Rescales (a, b) so that ‖a‖ = 1; the halfspace itself is unchanged.
  Hyperplane(Vector a, double b);

  const Vector& normal() const { return a_; }
  double offset() const { return b_; }
  int dim() const { return static_cast<int>(a_.size()); }

  /// Signed distance aᵀq - b; positive means q violates the halfspace.
  double violation(const Vector& q) const;

 private:
  Vector a_;
  double b_;
};

/// Intersection of halfspaces A q <= b. Immutable value type.
class HPolytope {
 public:
  HPolytope(Matrix A, Vector b);

  static HPolytope box(const Vector& lower, const Vector& upper);

  int dim() const { return static_cast<int>(A_.cols()); }
  int num_faces() const { return static_cast<int>(A_.rows()); }
  const Matrix& A() const { return A_; }
  const Vector& b() const { return b_; }

  bool contains(const Vector& q, double tol = kMembershipTol) const;

  /// True if every face has positive slack at q.
  bool strictly_contains(const Vector& q) const;

  /// Returns a copy with one extra face.
  HPolytope add_face(const Hyperplane& h) const;

  friend bool operator==(const HPolytope& lhs, const HPolytope& rhs);

 private:
  Matrix A_;
  Vector b_;
};

/// {x : (x-c)ᵀ E (x-c) <= 1}, E symmetric positive definite.
class Ellipsoid {
 public:
  Ellipsoid(Matrix E, Vector center);

  static Ellipsoid ball(const Vector& center, double radius);

  /// Builds the ellipsoid {B u + d : ‖u‖ <= 1} for symmetric PD B, i.e. E = B⁻².
  static Ellipsoid from_shape(const Matrix& B, const Vector& d);

  int dim() const { return static_cast<int>(c_.size()); }
  const Matrix& E() const { return E_; }
  const Vector& center() const { return c_; }

  /// E⁻¹, the squared shape factor.
  Matrix shape_inverse() const;

  bool contains(const Vector& x) const;

 private:
  Matrix E_;
  Vector c_;
};

/// (q - c)ᵀ E (q - c).
double ellipsoid_metric_sq(const Ellipsoid& e, const Vector& q);

/// log det(E^{-1/2}); volume up to the dimension-dependent unit-ball constant.
double ellipsoid_volume_proxy(const Ellipsoid& e);

/// Plane with normal E(q*-c)/‖E(q*-c)‖ and offset aᵀq* - stepback.
Hyperplane tangent_hyperplane(const Ellipsoid& e, const Vector& q_star,
                              double stepback);

bool contains(const HPolytope& P, const Vector& q);
HPolytope add_face(const HPolytope& P, const Hyperplane& h);

/// Max of aᵀx over the ellipsoid: aᵀc + sqrt(aᵀE⁻¹a).
double support_value(const Ellipsoid& e, const Vector& a);

void check_dim(const char* what, long expected, long got);

}  // namespace cfree
