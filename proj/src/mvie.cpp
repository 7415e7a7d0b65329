#include "cfree/mvie.hpp"

#include "cfree/linprog.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace cfree {
namespace {

constexpr double kMaxConditionNumber = 1e10;

// Barrier for max log det B s.t. ‖B a_i‖ <= b_i - a_iᵀd, in coordinates
// where the Chebyshev ball of the polytope is the unit ball at the origin.
// Parameters x = (symmetric-basis coefficients of B, d).
class MvieBarrier {
 public:
  MvieBarrier(Matrix A, Vector b) : A_(std::move(A)), b_(std::move(b)) {
    d_ = static_cast<int>(A_.cols());
    for (int j = 0; j < d_; ++j) {
      for (int k = j; k < d_; ++k) {
        Matrix S = Matrix::Zero(d_, d_);
        S(j, k) = 1.0;
        S(k, j) = 1.0;
        basis_.push_back(std::move(S));
      }
    }
    nb_ = static_cast<int>(basis_.size());
  }

  int num_params() const { return nb_ + d_; }
  int num_faces() const { return static_cast<int>(A_.rows()); }

  Matrix shape(const Vector& x) const {
    Matrix B = Matrix::Zero(d_, d_);
    for (int k = 0; k < nb_; ++k) B += x[k] * basis_[k];
    return B;
  }
  Vector center(const Vector& x) const { return x.tail(d_); }

  Vector pack(const Matrix& B, const Vector& c) const {
    Vector x(num_params());
    int k = 0;
    for (int j = 0; j < d_; ++j) {
      for (int l = j; l < d_; ++l) x[k++] = B(j, l);
    }
    x.tail(d_) = c;
    return x;
  }

  bool feasible(const Vector& x) const {
    const Matrix B = shape(x);
    if (Eigen::LLT<Matrix>(B).info() != Eigen::Success) return false;
    const Vector s = b_ - A_ * center(x);
    const Matrix U = A_ * B;  // row i = (B a_i)ᵀ since B symmetric
    for (int i = 0; i < num_faces(); ++i) {
      if (!(s[i] > 0.0) || !(s[i] * s[i] - U.row(i).squaredNorm() > 0.0)) return false;
    }
    return true;
  }

  double log_det(const Vector& x) const {
    Eigen::LLT<Matrix> llt(shape(x));
    return 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
  }

  double value(const Vector& x, double t) const {
    const Matrix B = shape(x);
    const Vector s = b_ - A_ * center(x);
    const Matrix U = A_ * B;
    double f = -t * log_det(x);
    for (int i = 0; i < num_faces(); ++i) {
      f -= std::log(s[i] * s[i] - U.row(i).squaredNorm());
    }
    return f;
  }

  void derivatives(const Vector& x, double t, Vector& grad, Matrix& hess) const {
    const int n = num_params();
    grad = Vector::Zero(n);
    hess = Matrix::Zero(n, n);
    const Matrix B = shape(x);
    const Matrix Binv = B.inverse();

    std::vector<Matrix> BinvS(nb_);
    for (int k = 0; k < nb_; ++k) BinvS[k] = Binv * basis_[k];
    for (int k = 0; k < nb_; ++k) {
      grad[k] = -t * BinvS[k].trace();
      for (int l = k; l < nb_; ++l) {
        const double h = t * (BinvS[k] * BinvS[l]).trace();
        hess(k, l) = h;
        hess(l, k) = h;
      }
    }

    const Vector s = b_ - A_ * center(x);
    Matrix J = Matrix::Zero(1 + d_, n);
    Vector w(1 + d_);
    Matrix D = Matrix::Identity(1 + d_, 1 + d_) * -2.0;
    D(0, 0) = 2.0;
    for (int i = 0; i < num_faces(); ++i) {
      const Vector a = A_.row(i).transpose();
      const Vector u = B * a;
      const double g = s[i] * s[i] - u.squaredNorm();
      J.setZero();
      J.block(0, nb_, 1, d_) = -a.transpose();
      for (int k = 0; k < nb_; ++k) J.block(1, k, d_, 1) = basis_[k] * a;
      w[0] = 2.0 * s[i];
      w.tail(d_) = -2.0 * u;
      const Vector Jw = J.transpose() * w;
      grad -= Jw / g;
      hess += (Jw * Jw.transpose()) / (g * g) - J.transpose() * D * J / g;
    }
  }

 private:
  Matrix A_;
  Vector b_;
  int d_ = 0;
  int nb_ = 0;
  std::vector<Matrix> basis_;
};

}  // namespace

MvieResult inscribed_ellipsoid(const HPolytope& P, const MvieOptions& opts) {
  const int d = P.dim();

  // Unit-normalize rows; zero rows are either vacuous or make P empty.
  std::vector<int> keep;
  for (int i = 0; i < P.num_faces(); ++i) {
    const double n = P.A().row(i).norm();
    if (n > 0.0) {
      keep.push_back(i);
    } else if (P.b()[i] < 0.0) {
      throw EmptyPolytope("polytope has an infeasible zero row");
    }
  }
  Matrix A(keep.size(), d);
  Vector b(keep.size());
  for (std::size_t r = 0; r < keep.size(); ++r) {
    const double n = P.A().row(keep[r]).norm();
    A.row(static_cast<Eigen::Index>(r)) = P.A().row(keep[r]) / n;
    b[static_cast<Eigen::Index>(r)] = P.b()[keep[r]] / n;
  }
  const HPolytope normalized(A, b);
  const ChebyshevBall ball = chebyshev_ball(normalized);

  // Work in y = (x - x0) / r so the Chebyshev ball is the unit ball.
  const Vector b_scaled = (b - A * ball.center) / ball.radius;
  MvieBarrier barrier(A, b_scaled);

  Vector x = barrier.pack(0.5 * Matrix::Identity(d, d), Vector::Zero(d));
  const double nu = 2.0 * barrier.num_faces();
  const double mu = 10.0;
  double t = 1.0;
  int iterations = 0;
  bool converged = false;
  Vector grad;
  Matrix hess;

  while (iterations < opts.max_iterations) {
    // Centering.
    bool centered = false;
    while (iterations < opts.max_iterations) {
      barrier.derivatives(x, t, grad, hess);
      const Vector step = -hess.ldlt().solve(grad);
      const double decrement = -grad.dot(step);
      ++iterations;
      if (!std::isfinite(decrement)) break;
      const double f0 = barrier.value(x, t);
      // Below roundoff in f the Armijo test is meaningless.
      if (decrement * 0.5 < std::max(1e-10, 1e-12 * std::abs(f0))) {
        centered = true;
        break;
      }
      double alpha = 1.0;
      Vector trial = x + step;
      while (alpha > 1e-12 &&
             (!barrier.feasible(trial) ||
              barrier.value(trial, t) > f0 - 0.25 * alpha * decrement)) {
        alpha *= 0.5;
        trial = x + alpha * step;
      }
      if (alpha <= 1e-12) {
        centered = true;  // no further progress possible at this t
        break;
      }
      x = trial;
    }
    if (!centered) break;
    const double logdet = barrier.log_det(x);
    if (nu / t <= opts.tol * std::max(1.0, std::abs(logdet))) {
      converged = true;
      break;
    }
    t *= mu;
  }

  const Matrix B = ball.radius * barrier.shape(x);
  const Vector center = ball.center + ball.radius * barrier.center(x);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(B);
  const double cond = eig.eigenvalues().maxCoeff() / eig.eigenvalues().minCoeff();
  if (!(cond <= kMaxConditionNumber)) converged = false;

  MvieResult out{Ellipsoid::from_shape(B, center), 0.0, iterations, converged};
  out.log_volume_proxy = eig.eigenvalues().array().log().sum();
  return out;
}

}  // namespace cfree
