#pragma once

#include "cfree/geometry.hpp"

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace cfree {

class SamplerError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SamplerConfig {
  /// Hit-and-run steps between retained samples; 0 selects 50 * dim.
  int mixing_steps = 0;
  int chains = 4;
  std::uint64_t rng_seed = 0;
  /// Starting point of every chain; must be strictly inside the polytope.
  Vector start;
};

inline int default_mixing_steps(int dim) { return 50 * dim; }

/// Largest [t_lo, t_hi] with q + t·dir inside P. Throws UnboundedPolytope.
std::pair<double, double> chord(const HPolytope& P, const Vector& q,
                                const Vector& dir);

/// Approximately uniform samples in P from cfg.chains independent hit-and-run
/// chains. Chain j contributes a contiguous block of the output, so the result
/// is a pure function of (P, n, cfg).
std::vector<Vector> hit_and_run_batch(const HPolytope& P, std::size_t n,
                                      const SamplerConfig& cfg);

}  // namespace cfree
