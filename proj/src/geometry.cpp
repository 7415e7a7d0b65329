#include "cfree/geometry.hpp"

#include <cmath>

namespace cfree {

DimensionMismatch::DimensionMismatch(const std::string& what, long expected,
                                     long got)
    : std::invalid_argument(what + ": expected dimension " +
                            std::to_string(expected) + ", got " +
                            std::to_string(got)) {}

void check_dim(const char* what, long expected, long got) {
  if (expected != got) throw DimensionMismatch(what, expected, got);
}

Hyperplane::Hyperplane(Vector a, double b) : a_(std::move(a)), b_(b) {
  const double n = a_.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw GeometryError("hyperplane normal must be nonzero and finite");
  }
  a_ /= n;
  b_ /= n;
}

double Hyperplane::violation(const Vector& q) const {
  check_dim("Hyperplane::violation", dim(), q.size());
  return a_.dot(q) - b_;
}

HPolytope::HPolytope(Matrix A, Vector b) : A_(std::move(A)), b_(std::move(b)) {
  if (A_.rows() != b_.size()) {
    throw DimensionMismatch("HPolytope rows of A vs length of b", A_.rows(),
                            b_.size());
  }
  if (A_.cols() == 0) throw GeometryError("HPolytope needs dimension >= 1");
}

HPolytope HPolytope::box(const Vector& lower, const Vector& upper) {
  check_dim("HPolytope::box", lower.size(), upper.size());
  const long d = lower.size();
  for (long j = 0; j < d; ++j) {
    if (!(lower[j] < upper[j])) {
      throw GeometryError("box lower bound must be below upper bound");
    }
  }
  Matrix A(2 * d, d);
  A << Matrix::Identity(d, d), -Matrix::Identity(d, d);
  Vector b(2 * d);
  b << upper, -lower;
  return HPolytope(std::move(A), std::move(b));
}

bool HPolytope::contains(const Vector& q, double tol) const {
  check_dim("HPolytope::contains", dim(), q.size());
  return ((A_ * q - b_).array() <= tol).all();
}

bool HPolytope::strictly_contains(const Vector& q) const {
  check_dim("HPolytope::strictly_contains", dim(), q.size());
  return ((b_ - A_ * q).array() > 0.0).all();
}

HPolytope HPolytope::add_face(const Hyperplane& h) const {
  check_dim("HPolytope::add_face", dim(), h.dim());
  Matrix A(A_.rows() + 1, A_.cols());
  A << A_, h.normal().transpose();
  Vector b(b_.size() + 1);
  b << b_, h.offset();
  return HPolytope(std::move(A), std::move(b));
}

bool operator==(const HPolytope& lhs, const HPolytope& rhs) {
  return lhs.A_.rows() == rhs.A_.rows() && lhs.A_.cols() == rhs.A_.cols() &&
         lhs.A_ == rhs.A_ && lhs.b_ == rhs.b_;
}

Ellipsoid::Ellipsoid(Matrix E, Vector center)
    : E_(std::move(E)), c_(std::move(center)) {
  if (E_.rows() != E_.cols()) throw GeometryError("ellipsoid matrix not square");
  check_dim("Ellipsoid center", E_.rows(), c_.size());
  const double scale = std::max(1.0, E_.cwiseAbs().maxCoeff());
  if ((E_ - E_.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol * scale) {
    throw GeometryError("ellipsoid matrix not symmetric");
  }
  E_ = 0.5 * (E_ + E_.transpose());
  if (Eigen::LLT<Matrix>(E_).info() != Eigen::Success) {
    throw GeometryError("ellipsoid matrix not positive definite");
  }
}

Ellipsoid Ellipsoid::ball(const Vector& center, double radius) {
  if (!(radius > 0.0)) throw GeometryError("ball radius must be positive");
  const long d = center.size();
  return Ellipsoid(Matrix::Identity(d, d) / (radius * radius), center);
}

Ellipsoid Ellipsoid::from_shape(const Matrix& B, const Vector& d) {
  const Matrix Binv = B.inverse();
  Matrix E = Binv.transpose() * Binv;
  return Ellipsoid(0.5 * (E + E.transpose()), d);
}

Matrix Ellipsoid::shape_inverse() const {
  return E_.llt().solve(Matrix::Identity(E_.rows(), E_.cols()));
}

bool Ellipsoid::contains(const Vector& x) const {
  return ellipsoid_metric_sq(*this, x) <= 1.0;
}

double ellipsoid_metric_sq(const Ellipsoid& e, const Vector& q) {
  check_dim("ellipsoid_metric_sq", e.dim(), q.size());
  const Vector r = q - e.center();
  return std::max(0.0, r.dot(e.E() * r));
}

double ellipsoid_volume_proxy(const Ellipsoid& e) {
  Eigen::LLT<Matrix> llt(e.E());
  if (llt.info() != Eigen::Success) {
    throw GeometryError("ellipsoid matrix not positive definite");
  }
  // log det E = 2 Σ log L_ii
  return -llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
}

Hyperplane tangent_hyperplane(const Ellipsoid& e, const Vector& q_star,
                              double stepback) {
  check_dim("tangent_hyperplane", e.dim(), q_star.size());
  if (stepback < 0.0) throw GeometryError("stepback must be nonnegative");
  Vector a = e.E() * (q_star - e.center());
  const double n = a.norm();
  if (!(n > 0.0)) {
    throw GeometryError("tangent hyperplane undefined at the ellipsoid center");
  }
  a /= n;
  return Hyperplane(a, a.dot(q_star) - stepback);
}

bool contains(const HPolytope& P, const Vector& q) { return P.contains(q); }

HPolytope add_face(const HPolytope& P, const Hyperplane& h) {
  return P.add_face(h);
}

double support_value(const Ellipsoid& e, const Vector& a) {
  check_dim("support_value", e.dim(), a.size());
  const Vector w = e.E().llt().solve(a);
  return a.dot(e.center()) + std::sqrt(std::max(0.0, a.dot(w)));
}

}  // namespace cfree
