#pragma once

// Reference computations used by the tests. They are written from first
// principles and share no code with the library.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <vector>

namespace oracle {

// Values frozen from independent high-precision evaluation (mpmath / scipy).
inline constexpr double kChiSquare15At0001 = 37.69729821835383;
inline constexpr double kDeltaInnerK1 = 0.030396355092701331;   // 6·0.05/π²
inline constexpr double kDeltaNestedI1K1 = 0.018478768058431803;  // 36·0.05/π⁴
// log det of the shape factor of the Steiner inellipse of the unit simplex.
inline constexpr double kSimplexLogDet = -2.3410656135621098;

/// Pearson statistic for counts against equal expected cell mass.
inline double chi_square_uniform(const std::vector<std::size_t>& counts) {
  double n = 0.0;
  for (auto c : counts) n += static_cast<double>(c);
  const double expected = n / static_cast<double>(counts.size());
  double stat = 0.0;
  for (auto c : counts) {
    const double diff = static_cast<double>(c) - expected;
    stat += diff * diff / expected;
  }
  return stat;
}

/// 4x4 cell counts of points in [0,1]².
template <class Points>
std::vector<std::size_t> grid_counts_4x4(const Points& pts) {
  std::vector<std::size_t> counts(16, 0);
  for (const auto& p : pts) {
    const int i = std::min(3, static_cast<int>(p[0] * 4.0));
    const int j = std::min(3, static_cast<int>(p[1] * 4.0));
    ++counts[static_cast<std::size_t>(j * 4 + i)];
  }
  return counts;
}

inline Eigen::Matrix2d rot2(double th) {
  Eigen::Matrix2d R;
  R << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
  return R;
}

inline Eigen::Matrix3d rot3(double a, double b, double c) {
  return (Eigen::AngleAxisd(a, Eigen::Vector3d::UnitZ()) *
          Eigen::AngleAxisd(b, Eigen::Vector3d::UnitY()) *
          Eigen::AngleAxisd(c, Eigen::Vector3d::UnitZ()))
      .toRotationMatrix();
}

/// Largest log det B over ellipsoids {B u + c} with a fixed unit-determinant
/// shape B0, given the center: scale out until the first face is touched.
inline double scaled_logdet(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                            const Eigen::VectorXd& c, const Eigen::MatrixXd& B0) {
  double s = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    const Eigen::VectorXd a = A.row(i).transpose();
    const double slack = b[i] - a.dot(c);
    if (slack <= 0.0) return -std::numeric_limits<double>::infinity();
    s = std::min(s, slack / (B0 * a).norm());
  }
  return static_cast<double>(A.cols()) * std::log(s);
}

/// Objective over the parameter vector p: center, log axis ratios, angles.
inline double mvie_objective(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                             const std::vector<double>& p) {
  const auto d = A.cols();
  if (d == 2) {
    Eigen::VectorXd c(2);
    c << p[0], p[1];
    const Eigen::Matrix2d R = rot2(p[3]);
    const Eigen::Matrix2d D = Eigen::Vector2d(std::exp(p[2]), std::exp(-p[2])).asDiagonal();
    return scaled_logdet(A, b, c, R * D * R.transpose());
  }
  Eigen::VectorXd c(3);
  c << p[0], p[1], p[2];
  const Eigen::Matrix3d R = rot3(p[5], p[6], p[7]);
  const Eigen::Matrix3d D =
      Eigen::Vector3d(std::exp(p[3]), std::exp(p[4]), std::exp(-p[3] - p[4])).asDiagonal();
  return scaled_logdet(A, b, c, R * D * R.transpose());
}

/// Grid search with successive refinement: at each level evaluate a
/// 5^k (2D) or 3^k (3D) grid around the incumbent until it stops improving,
/// then shrink the grid. Every evaluated point is a feasible ellipsoid, so the
/// result is a lower bound on the optimum. Ridges of the min-over-faces
/// objective can stall one shrink schedule, so several are run and the best
/// value is kept.
inline double mvie_grid_search(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                               const Eigen::VectorXd& start_center, double start_radius,
                               double final_step = 1e-7) {
  const auto d = A.cols();
  const std::size_t k = d == 2 ? 4 : 8;
  const int pts = d == 2 ? 5 : 3;
  std::size_t total = 1;
  for (std::size_t i = 0; i < k; ++i) total *= static_cast<std::size_t>(pts);
  double overall = -std::numeric_limits<double>::infinity();
  for (double shrink : {0.5, 0.6, 0.7, 0.8}) {
    std::vector<double> best(k, 0.0);
    for (Eigen::Index i = 0; i < d; ++i) best[static_cast<std::size_t>(i)] = start_center[i];
    std::vector<double> step(k, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
      step[i] = i < static_cast<std::size_t>(d) ? start_radius : 0.8;
    }
    double best_val = mvie_objective(A, b, best);
    while (step[0] > final_step * start_radius) {
      bool moved = true;
      while (moved) {
        moved = false;
        const std::vector<double> center = best;
        for (std::size_t idx = 0; idx < total; ++idx) {
          std::vector<double> p = center;
          std::size_t rem = idx;
          for (std::size_t j = 0; j < k; ++j) {
            const int o = static_cast<int>(rem % static_cast<std::size_t>(pts)) - pts / 2;
            rem /= static_cast<std::size_t>(pts);
            p[j] += o * step[j] / (pts / 2);
          }
          const double v = mvie_objective(A, b, p);
          if (v > best_val + 1e-15) {
            best_val = v;
            best = p;
            moved = true;
          }
        }
      }
      for (auto& s : step) s *= shrink;
    }
    overall = std::max(overall, best_val);
  }
  return overall;
}

/// Support function of an ellipsoid {x : (x-c)ᵀE(x-c) <= 1}.
inline double ellipsoid_support(const Eigen::MatrixXd& E, const Eigen::VectorXd& c,
                                const Eigen::VectorXd& a) {
  return a.dot(c) + std::sqrt(a.dot(E.inverse() * a));
}

}  // namespace oracle
