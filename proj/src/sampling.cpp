#include "cfree/sampling.hpp"

#include "cfree/linprog.hpp"
#include "cfree/parallel.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace cfree {
namespace {

// Chord from precomputed slacks s = b - A q and projected direction ad = A dir.
std::pair<double, double> chord_from_slack(const Vector& slack,
                                           const Vector& ad) {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < slack.size(); ++i) {
    const double s = std::max(0.0, slack[i]);
    if (ad[i] > 0.0) {
      hi = std::min(hi, s / ad[i]);
    } else if (ad[i] < 0.0) {
      lo = std::max(lo, s / ad[i]);
    }
  }
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    throw UnboundedPolytope("hit-and-run chord is unbounded");
  }
  return {lo, hi};
}

void run_chain(const HPolytope& P, const Vector& start, int mixing_steps,
               std::uint64_t seed, std::vector<Vector>& out,
               std::size_t offset, std::size_t count) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const int d = P.dim();

  Vector x = start;
  Vector slack = P.b() - P.A() * x;
  Vector dir(d);
  Vector ad(P.num_faces());
  for (std::size_t k = 0; k < count; ++k) {
    for (int step = 0; step < mixing_steps; ++step) {
      double norm = 0.0;
      do {
        for (int j = 0; j < d; ++j) dir[j] = normal(rng);
        norm = dir.norm();
      } while (norm == 0.0);
      dir /= norm;
      ad.noalias() = P.A() * dir;
      const auto [lo, hi] = chord_from_slack(slack, ad);
      const double t = std::uniform_real_distribution<double>(lo, hi)(rng);
      x += t * dir;
      slack -= t * ad;
    }
    slack = P.b() - P.A() * x;
    out[offset + k] = x;
  }
}

}  // namespace

std::pair<double, double> chord(const HPolytope& P, const Vector& q,
                                const Vector& dir) {
  check_dim("chord point", P.dim(), q.size());
  check_dim("chord direction", P.dim(), dir.size());
  return chord_from_slack(P.b() - P.A() * q, P.A() * dir);
}

std::vector<Vector> hit_and_run_batch(const HPolytope& P, std::size_t n,
                                      const SamplerConfig& cfg) {
  check_dim("hit_and_run_batch start", P.dim(), cfg.start.size());
  if (cfg.chains < 1) throw SamplerError("chains must be >= 1");
  if (cfg.mixing_steps < 0) throw SamplerError("mixing_steps must be >= 1");
  if (!P.strictly_contains(cfg.start)) {
    throw SamplerError("hit-and-run start point is not interior");
  }
  std::vector<Vector> out(n);
  if (n == 0) return out;

  const int steps =
      cfg.mixing_steps > 0 ? cfg.mixing_steps : default_mixing_steps(P.dim());
  const auto chains = static_cast<std::size_t>(cfg.chains);
  std::vector<std::size_t> offsets(chains + 1, 0);
  for (std::size_t j = 0; j < chains; ++j) {
    offsets[j + 1] = offsets[j] + n / chains + (j < n % chains ? 1 : 0);
  }
  parallel_for(
      chains,
      [&](std::size_t j) {
        run_chain(P, cfg.start, steps, derive_seed(cfg.rng_seed, j), out,
                  offsets[j], offsets[j + 1] - offsets[j]);
      },
      1);
  return out;
}

}  // namespace cfree
