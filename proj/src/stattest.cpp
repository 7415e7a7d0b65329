#include "cfree/stattest.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace cfree {
namespace {

bool in_open_unit(double x) { return x > 0.0 && x < 1.0; }

void require_open_unit(const char* name, double x) {
  if (!in_open_unit(x)) {
    throw StatError(std::string(name) + " must lie in (0, 1), got " +
                    std::to_string(x));
  }
}

std::size_t ceil_count(double x) {
  if (!std::isfinite(x)) throw StatError("sample count overflow");
  return static_cast<std::size_t>(std::max(1.0, std::ceil(x)));
}

}  // namespace

void TestSpec::validate() const {
  require_open_unit("epsilon", epsilon);
  require_open_unit("delta", delta);
  if (!(tau > 0.0 && tau <= 1.0)) {
    throw StatError("tau must lie in (0, 1], got " + std::to_string(tau));
  }
}

std::string_view to_string(Verdict v) {
  return v == Verdict::kAccept ? "accept" : "reject";
}

std::size_t sample_count(const TestSpec& spec, double delta_k) {
  spec.validate();
  require_open_unit("delta_k", delta_k);
  return ceil_count(2.0 * -std::log(delta_k) /
                    (spec.epsilon * spec.tau * spec.tau));
}

TestOutcome unadaptive_test(const std::vector<bool>& collision_flags,
                            const TestSpec& spec, std::size_t M) {
  spec.validate();
  if (M < 1) throw StatError("unadaptive test needs M >= 1");
  if (collision_flags.size() < M) {
    throw StatError("unadaptive test needs " + std::to_string(M) +
                    " flags, got " + std::to_string(collision_flags.size()));
  }
  TestOutcome out;
  out.m = M;
  out.successes = static_cast<std::size_t>(
      std::count(collision_flags.begin(), collision_flags.begin() + M, true));
  out.threshold = (1.0 - spec.tau) * spec.epsilon;
  // Exact ties accept; the relative slack absorbs rounding in M(1-tau)eps.
  const double limit = static_cast<double>(M) * out.threshold;
  out.verdict = static_cast<double>(out.successes) <= limit * (1.0 + 1e-12)
                    ? Verdict::kAccept
                    : Verdict::kReject;
  return out;
}

double delta_schedule_inner(double delta, long k) {
  if (k < 1) throw StatError("inner index k must be >= 1");
  const double kk = static_cast<double>(k);
  return 6.0 * delta / (std::numbers::pi * std::numbers::pi * kk * kk);
}

double delta_schedule_nested(double delta, long i, long k) {
  if (i < 1 || k < 1) throw StatError("indices i and k must be >= 1");
  const double pi2 = std::numbers::pi * std::numbers::pi;
  const double ii = static_cast<double>(i);
  const double kk = static_cast<double>(k);
  return 36.0 * delta / (pi2 * pi2 * ii * ii * kk * kk);
}

std::size_t sample_count_two_sided(double p, double delta, double tau,
                                   double tau_minus) {
  require_open_unit("p", p);
  require_open_unit("delta", delta);
  require_open_unit("tau", tau);
  require_open_unit("tau_minus", tau_minus);
  const double reject_term = 2.0 / (tau * tau);
  const double accept_term = (2.0 + tau_minus) * (1.0 + tau_minus) /
                             (tau_minus * tau_minus * (1.0 - tau));
  return ceil_count(-std::log(delta) / p * std::max(reject_term, accept_term));
}

std::size_t geometric_sample_bound(double epsilon, double alpha) {
  require_open_unit("epsilon", epsilon);
  require_open_unit("alpha", alpha);
  const double m = std::log1p(-alpha) / std::log1p(-epsilon) - 1.0;
  return static_cast<std::size_t>(std::max(0.0, std::ceil(m)));
}

}  // namespace cfree
