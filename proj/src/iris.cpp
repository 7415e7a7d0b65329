#include "cfree/iris.hpp"

#include "cfree/linprog.hpp"
#include "cfree/parallel.hpp"
#include "cfree/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cfree {

std::string_view to_string(CandidateGenerator g) {
  switch (g) {
    case CandidateGenerator::kBisection: return "bisection";
    case CandidateGenerator::kRay: return "ray";
    case CandidateGenerator::kGreedy: return "greedy";
  }
  return "bisection";
}

std::optional<CandidateGenerator> parse_generator(std::string_view name) {
  for (auto g : {CandidateGenerator::kBisection, CandidateGenerator::kRay,
                 CandidateGenerator::kGreedy}) {
    if (to_string(g) == name) return g;
  }
  return std::nullopt;
}

std::string_view to_string(TerminationReason r) {
  switch (r) {
    case TerminationReason::kAccepted: return "accepted";
    case TerminationReason::kSeedExcluded: return "seed_excluded";
    case TerminationReason::kMaxIterations: return "max_iterations";
    case TerminationReason::kCenterInCollision: return "center_in_collision";
  }
  return "max_iterations";
}

std::string_view to_string(AlternationStop s) {
  switch (s) {
    case AlternationStop::kNone: return "none";
    case AlternationStop::kVolumeConverged: return "volume_converged";
    case AlternationStop::kMaxOuterIterations: return "max_outer_iterations";
  }
  return "none";
}

std::optional<TerminationReason> parse_termination_reason(std::string_view s) {
  for (auto r : {TerminationReason::kAccepted, TerminationReason::kSeedExcluded,
                 TerminationReason::kMaxIterations,
                 TerminationReason::kCenterInCollision}) {
    if (to_string(r) == s) return r;
  }
  return std::nullopt;
}

std::optional<AlternationStop> parse_alternation_stop(std::string_view s) {
  for (auto a : {AlternationStop::kNone, AlternationStop::kVolumeConverged,
                 AlternationStop::kMaxOuterIterations}) {
    if (to_string(a) == s) return a;
  }
  return std::nullopt;
}

void IrisOptions::validate() const {
  test_spec().validate();
  if (!(stepback >= 0.0)) throw IrisError("stepback must be >= 0");
  if (particles < 1) throw IrisError("particles must be >= 1");
  if (bisections < 1) throw IrisError("bisections must be >= 1");
  if (max_faces_per_iter < 1) throw IrisError("max_faces_per_iter must be >= 1");
  if (max_inner_iterations < 1) throw IrisError("max_inner_iterations must be >= 1");
  if (max_outer_iterations < 1) throw IrisError("max_outer_iterations must be >= 1");
  if (!(termination_threshold >= 0.0)) {
    throw IrisError("termination_threshold must be >= 0");
  }
  if (!(r_start > 0.0)) throw IrisError("r_start must be > 0");
  if (ray_step_fraction < 0.0) throw IrisError("ray_step_fraction must be >= 0");
  if (mixing_steps < 0) throw IrisError("mixing_steps must be >= 0");
  if (chains < 1) throw IrisError("chains must be >= 1");
}

Vector bisect_to_center(const Vector& q_col, const Vector& c,
                        const CollisionWorld& world, int n_steps) {
  check_dim("bisect_to_center", world.dim(), q_col.size());
  check_dim("bisect_to_center", world.dim(), c.size());
  if (!world.check(q_col)) throw IrisError("bisection start is not in collision");
  if (world.check(c)) throw IrisError("bisection center is in collision");
  Vector free = c;
  Vector hit = q_col;
  for (int step = 0; step < n_steps; ++step) {
    const Vector mid = 0.5 * (free + hit);
    if (world.check(mid)) {
      hit = mid;
    } else {
      free = mid;
    }
  }
  return hit;
}

std::optional<Vector> ray_collision_search(const Vector& sample, const Vector& c,
                                           const HPolytope& P,
                                           const CollisionWorld& world,
                                           double step_fraction) {
  check_dim("ray_collision_search", world.dim(), sample.size());
  check_dim("ray_collision_search", world.dim(), c.size());
  if (!(step_fraction > 0.0)) throw IrisError("ray step fraction must be > 0");
  const Vector step = step_fraction * (sample - c);
  if (!(step.norm() > 0.0)) return std::nullopt;
  for (long j = 1;; ++j) {
    const Vector q = c + static_cast<double>(j) * step;
    if (!P.contains(q)) return std::nullopt;
    if (world.check(q)) return q;
  }
}

namespace {

// Stable ascending order by ellipsoid metric.
std::vector<Vector> sort_by_metric(std::vector<Vector> points, const Ellipsoid& e) {
  std::vector<double> key(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    key[i] = ellipsoid_metric_sq(e, points[i]);
  }
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return key[a] < key[b]; });
  std::vector<Vector> out;
  out.reserve(points.size());
  for (std::size_t i : order) out.push_back(std::move(points[i]));
  return out;
}

}  // namespace

std::vector<Vector> greedy_candidates(const std::vector<Vector>& collision_samples,
                                      const Ellipsoid& e, const HPolytope& P) {
  std::vector<Vector> inside;
  for (const auto& q : collision_samples) {
    if (P.contains(q)) inside.push_back(q);
  }
  return sort_by_metric(std::move(inside), e);
}

PlacementResult place_nonredundant_hyperplanes(const HPolytope& P,
                                               const Ellipsoid& e,
                                               std::vector<Vector> candidates,
                                               double stepback, int max_faces) {
  PlacementResult out{P, 0};
  const Vector& c = e.center();
  for (const Vector& q : sort_by_metric(std::move(candidates), e)) {
    if (out.added >= max_faces) break;
    if (!out.polytope.contains(q)) continue;
    if ((q - c).norm() == 0.0) continue;
    const Hyperplane tangent = tangent_hyperplane(e, q, 0.0);
    const double gap = tangent.normal().dot(q - c);
    const double margin = std::min(stepback, 0.5 * gap);
    out.polytope = out.polytope.add_face(
        Hyperplane(tangent.normal(), tangent.offset() - margin));
    ++out.added;
  }
  return out;
}

SeparatingPlanesResult zero_order_separating_planes(const HPolytope& domain,
                                                    const Ellipsoid& e, int outer_i,
                                                    const CollisionWorld& world,
                                                    const IrisOptions& opts) {
  opts.validate();
  check_dim("zero_order_separating_planes", domain.dim(), e.dim());
  check_dim("zero_order_separating_planes", world.dim(), e.dim());
  if (outer_i < 1) throw IrisError("outer iteration index must be >= 1");
  const Vector& c = e.center();
  if (world.check(c)) throw IrisError("ellipsoid center is in collision");
  if (!domain.strictly_contains(c)) {
    throw IrisError("ellipsoid center is not inside the domain");
  }

  const TestSpec spec = opts.test_spec();
  const double step_fraction =
      opts.ray_step_fraction > 0.0 ? opts.ray_step_fraction : 1.0 / opts.bisections;

  SeparatingPlanesResult result{domain, false, {}};
  for (int k = 1; k <= opts.max_inner_iterations; ++k) {
    InnerIterationLog entry;
    entry.outer = outer_i;
    entry.inner = k;
    entry.delta_ik = opts.nested_schedule()
                         ? delta_schedule_nested(opts.delta, outer_i, k)
                         : delta_schedule_inner(opts.delta, k);
    const std::size_t M = sample_count(spec, entry.delta_ik);
    const std::size_t batch =
        std::max(M, static_cast<std::size_t>(opts.particles));

    SamplerConfig cfg;
    cfg.mixing_steps = opts.mixing_steps;
    cfg.chains = opts.chains;
    cfg.rng_seed = derive_seed(opts.rng_seed, static_cast<std::uint64_t>(outer_i),
                               static_cast<std::uint64_t>(k));
    cfg.start = c;
    const std::vector<Vector> samples = hit_and_run_batch(result.polytope, batch, cfg);
    const std::vector<bool> flags = check_batch(world, samples);

    entry.samples_drawn = samples.size();
    entry.collisions_found =
        static_cast<std::size_t>(std::count(flags.begin(), flags.end(), true));
    entry.test = unadaptive_test(flags, spec, M);
    if (entry.test.verdict == Verdict::kAccept) {
      result.log.push_back(entry);
      result.accepted = true;
      return result;
    }

    const auto particles = static_cast<std::size_t>(opts.particles);
    std::vector<Vector> colliding;
    for (std::size_t j = 0; j < samples.size(); ++j) {
      if (flags[j]) colliding.push_back(samples[j]);
    }

    std::vector<std::optional<Vector>> found;
    switch (opts.generator) {
      case CandidateGenerator::kBisection: {
        if (colliding.size() > particles) colliding.resize(particles);
        found.resize(colliding.size());
        parallel_for(
            colliding.size(),
            [&](std::size_t j) {
              found[j] = bisect_to_center(colliding[j], c, world, opts.bisections);
            },
            8);
        break;
      }
      case CandidateGenerator::kRay: {
        // A ray result outside the updated polytope is exactly the case where
        // the ray would have exited first, so searching against the polytope
        // at the start of the iteration is equivalent.
        const std::size_t n = std::min(particles, samples.size());
        found.resize(n);
        parallel_for(
            n,
            [&](std::size_t j) {
              found[j] = ray_collision_search(samples[j], c, result.polytope, world,
                                              step_fraction);
            },
            8);
        break;
      }
      case CandidateGenerator::kGreedy: {
        for (auto& q : greedy_candidates(colliding, e, result.polytope)) {
          found.emplace_back(std::move(q));
        }
        break;
      }
    }

    std::vector<Vector> candidates;
    for (auto& q : found) {
      if (!q) continue;
      if (opts.refine_candidate) {
        auto refined = opts.refine_candidate(*q, e, result.polytope);
        if (refined) candidates.push_back(std::move(*refined));
      } else {
        candidates.push_back(std::move(*q));
      }
    }
    entry.candidates = candidates.size();

    PlacementResult placed = place_nonredundant_hyperplanes(
        result.polytope, e, std::move(candidates), opts.stepback,
        opts.max_faces_per_iter);
    result.polytope = std::move(placed.polytope);
    entry.hyperplanes_added = placed.added;
    result.log.push_back(entry);
  }
  return result;
}

RegionReport iris_grow(const HPolytope& domain, const Vector& seed,
                       const CollisionWorld& world, const IrisOptions& opts) {
  opts.validate();
  check_dim("iris_grow seed", domain.dim(), seed.size());
  check_dim("iris_grow world", domain.dim(), world.dim());
  bounding_box(domain);  // throws for unbounded or empty domains
  if (!domain.strictly_contains(seed)) {
    throw IrisError("seed is not strictly inside the domain");
  }
  if (world.check(seed)) throw IrisError("seed is in collision");

  Ellipsoid ellipsoid = Ellipsoid::ball(seed, opts.r_start);
  RegionReport report{domain, ellipsoid, 0, {}, {}, TerminationReason::kMaxIterations,
                      AlternationStop::kNone};
  std::optional<double> previous_proxy;

  for (int i = 1; i <= opts.max_outer_iterations; ++i) {
    SeparatingPlanesResult sp =
        zero_order_separating_planes(domain, ellipsoid, i, world, opts);
    report.outer_iterations = i;
    report.polytope = sp.polytope;
    OuterIterationLog outer;
    outer.outer = i;
    outer.inner_iterations = static_cast<int>(sp.log.size());
    outer.accepted = sp.accepted;
    outer.faces = sp.polytope.num_faces();
    report.inner_log.insert(report.inner_log.end(), sp.log.begin(), sp.log.end());

    std::optional<MvieResult> mvie;
    try {
      mvie = inscribed_ellipsoid(sp.polytope, opts.mvie);
    } catch (const GeometryError&) {
      // Leaves the previous ellipsoid in the report.
    }
    if (mvie) {
      outer.volume_proxy = mvie->log_volume_proxy;
      outer.mvie_converged = mvie->converged;
      report.final_ellipsoid = mvie->ellipsoid;
    }
    report.outer_log.push_back(outer);

    if (!sp.accepted) {
      report.termination_reason = TerminationReason::kMaxIterations;
      return report;
    }
    if (!sp.polytope.contains(seed)) {
      report.termination_reason = TerminationReason::kSeedExcluded;
      return report;
    }
    if (!mvie) throw IrisError("inscribed ellipsoid failed on an accepted polytope");

    if (previous_proxy &&
        std::exp(mvie->log_volume_proxy - *previous_proxy) - 1.0 <
            opts.termination_threshold) {
      report.termination_reason = TerminationReason::kAccepted;
      report.alternation_stop = AlternationStop::kVolumeConverged;
      return report;
    }
    if (i == opts.max_outer_iterations) break;
    if (world.check(mvie->ellipsoid.center()) ||
        !domain.strictly_contains(mvie->ellipsoid.center())) {
      report.termination_reason = TerminationReason::kCenterInCollision;
      return report;
    }
    previous_proxy = mvie->log_volume_proxy;
    ellipsoid = mvie->ellipsoid;
  }
  report.termination_reason = TerminationReason::kAccepted;
  report.alternation_stop = AlternationStop::kMaxOuterIterations;
  return report;
}

}  // namespace cfree
