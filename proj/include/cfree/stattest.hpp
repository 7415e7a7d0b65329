#pragma once

#include <cstddef>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace cfree {

class StatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Admissible fraction in collision, admissible uncertainty, and test margin.
struct TestSpec {
  double epsilon = 0.01;
  double delta = 0.05;
  double tau = 0.5;

  /// Throws StatError unless epsilon, delta in (0,1) and tau in (0,1].
  void validate() const;
};

enum class Verdict { kAccept, kReject };

std::string_view to_string(Verdict v);

struct TestOutcome {
  Verdict verdict = Verdict::kReject;
  std::size_t m = 0;
  std::size_t successes = 0;  // in-collision samples among the first m
  double threshold = 0.0;     // (1 - tau) * epsilon
};

/// M = ceil(2 ln(1/delta_k) / (epsilon tau^2)), at least 1.
std::size_t sample_count(const TestSpec& spec, double delta_k);

/// Counts true flags among the first M entries; rejects iff count > M(1-tau)eps.
TestOutcome unadaptive_test(const std::vector<bool>& collision_flags,
                            const TestSpec& spec, std::size_t M);

/// 6 delta / (pi^2 k^2): budgets for a single outer iteration.
double delta_schedule_inner(double delta, long k);

/// 36 delta / (pi^4 i^2 k^2): budgets when outer and inner loops both repeat.
double delta_schedule_nested(double delta, long i, long k);

/// Sample count controlling both false accept (true rate >= p) and false
/// reject (true rate <= (1-tau) p / (1+tau_minus)) at level delta.
std::size_t sample_count_two_sided(double p, double delta, double tau,
                                   double tau_minus = 0.5);

/// ceil(ln(1-alpha)/ln(1-epsilon) - 1), clamped at 0: consecutive collision
/// free draws needed by the first-collision (geometric) termination rule.
std::size_t geometric_sample_bound(double epsilon, double alpha);

}  // namespace cfree
