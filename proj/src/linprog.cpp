#include "cfree/linprog.hpp"

#include <limits>
#include <vector>

namespace cfree {
namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kCostTol = 1e-10;

struct Tableau {
  Matrix T;                // rows 0..m-1 constraints, row m objective; last col rhs
  std::vector<int> basis;  // basic column per constraint row
  int num_cols = 0;        // structural + slack + artificial columns

  int m() const { return static_cast<int>(basis.size()); }
  double& rhs(int i) { return T(i, num_cols); }

  void pivot(int row, int col) {
    T.row(row) /= T(row, col);
    for (int i = 0; i <= m(); ++i) {
      if (i != row && T(i, col) != 0.0) T.row(i) -= T(i, col) * T.row(row);
    }
    basis[row] = col;
  }

  // Maximizes with the objective row holding reduced costs (z_j - c_j).
  // Columns >= allowed_cols never enter. Returns false if unbounded.
  bool run(int allowed_cols) {
    for (int iter = 0; iter < 50000; ++iter) {
      int enter = -1;
      for (int j = 0; j < allowed_cols; ++j) {
        if (T(m(), j) < -kCostTol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m(); ++i) {
        if (T(i, enter) > kPivotTol) {
          const double ratio = T(i, num_cols) / T(i, enter);
          if (ratio < best - 1e-14 ||
              (ratio <= best + 1e-14 && leave >= 0 && basis[i] < basis[leave])) {
            best = ratio;
            leave = i;
          }
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
    throw GeometryError("simplex iteration limit reached");
  }
};

}  // namespace

LpResult lp_maximize(const Vector& c, const Matrix& A, const Vector& b) {
  check_dim("lp_maximize cost", A.cols(), c.size());
  check_dim("lp_maximize rhs", A.rows(), b.size());
  const int m = static_cast<int>(A.rows());
  const int d = static_cast<int>(A.cols());

  std::vector<int> needs_art;
  for (int i = 0; i < m; ++i) {
    if (b[i] < 0.0) needs_art.push_back(i);
  }
  const int n_struct = 2 * d + m;
  const int n_art = static_cast<int>(needs_art.size());

  Tableau tab;
  tab.num_cols = n_struct + n_art;
  tab.T = Matrix::Zero(m + 1, tab.num_cols + 1);
  tab.basis.assign(m, -1);
  for (int i = 0; i < m; ++i) {
    const double sign = b[i] < 0.0 ? -1.0 : 1.0;
    tab.T.block(i, 0, 1, d) = sign * A.row(i);
    tab.T.block(i, d, 1, d) = -sign * A.row(i);
    tab.T(i, 2 * d + i) = sign;
    tab.rhs(i) = sign * b[i];
    if (sign > 0.0) tab.basis[i] = 2 * d + i;
  }
  for (int k = 0; k < n_art; ++k) {
    const int i = needs_art[k];
    tab.T(i, n_struct + k) = 1.0;
    tab.basis[i] = n_struct + k;
  }

  LpResult result;
  if (n_art > 0) {
    // Phase 1: maximize -Σ artificials.
    for (int k = 0; k < n_art; ++k) tab.T(m, n_struct + k) = 1.0;
    for (int k = 0; k < n_art; ++k) tab.T.row(m) -= tab.T.row(needs_art[k]);
    tab.run(tab.num_cols);
    const double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
    if (tab.T(m, tab.num_cols) < -1e-9 * scale) {
      result.status = LpStatus::kInfeasible;
      return result;
    }
    for (int i = 0; i < m; ++i) {
      if (tab.basis[i] < n_struct) continue;
      for (int j = 0; j < n_struct; ++j) {
        if (std::abs(tab.T(i, j)) > kPivotTol) {
          tab.pivot(i, j);
          break;
        }
      }
    }
  }

  // Phase 2.
  tab.T.row(m).setZero();
  tab.T.block(m, 0, 1, d) = -c.transpose();
  tab.T.block(m, d, 1, d) = c.transpose();
  for (int i = 0; i < m; ++i) {
    const int col = tab.basis[i];
    if (tab.T(m, col) != 0.0) tab.T.row(m) -= tab.T(m, col) * tab.T.row(i);
  }
  if (!tab.run(n_struct)) {
    result.status = LpStatus::kUnbounded;
    return result;
  }

  Vector y = Vector::Zero(tab.num_cols);
  for (int i = 0; i < m; ++i) y[tab.basis[i]] = tab.rhs(i);
  result.status = LpStatus::kOptimal;
  result.x = y.head(d) - y.segment(d, d);
  result.value = c.dot(result.x);
  return result;
}

BoundingBox bounding_box(const HPolytope& P) {
  const int d = P.dim();
  BoundingBox box{Vector(d), Vector(d)};
  for (int j = 0; j < d; ++j) {
    for (const double sign : {1.0, -1.0}) {
      Vector c = Vector::Zero(d);
      c[j] = sign;
      const LpResult r = lp_maximize(c, P.A(), P.b());
      if (r.status == LpStatus::kInfeasible) {
        throw EmptyPolytope("polytope is empty");
      }
      if (r.status == LpStatus::kUnbounded) {
        throw UnboundedPolytope("polytope is unbounded along coordinate " +
                                std::to_string(j));
      }
      if (sign > 0.0) {
        box.upper[j] = r.value;
      } else {
        box.lower[j] = -r.value;
      }
    }
  }
  return box;
}

ChebyshevBall chebyshev_ball(const HPolytope& P) {
  const int d = P.dim();
  const int m = P.num_faces();
  // Variables (x, r): a_iᵀx + ‖a_i‖ r <= b_i, -r <= 0.
  Matrix A = Matrix::Zero(m + 1, d + 1);
  Vector b = Vector::Zero(m + 1);
  A.topLeftCorner(m, d) = P.A();
  A.col(d).head(m) = P.A().rowwise().norm();
  b.head(m) = P.b();
  A(m, d) = -1.0;
  Vector c = Vector::Zero(d + 1);
  c[d] = 1.0;
  const LpResult r = lp_maximize(c, A, b);
  if (r.status == LpStatus::kInfeasible) throw EmptyPolytope("polytope is empty");
  if (r.status == LpStatus::kUnbounded) {
    throw UnboundedPolytope("polytope contains arbitrarily large balls");
  }
  if (!(r.x[d] > 0.0)) {
    throw EmptyPolytope("polytope has empty interior");
  }
  return ChebyshevBall{r.x.head(d), r.x[d]};
}

}  // namespace cfree
