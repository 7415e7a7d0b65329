#pragma once

#include "cfree/collision.hpp"
#include "cfree/geometry.hpp"
#include "cfree/mvie.hpp"
#include "cfree/stattest.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

namespace cfree {

class IrisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Where hyperplane candidates come from after a rejected test.
enum class CandidateGenerator {
  kBisection,  // bisect each colliding sample toward the ellipsoid center
  kRay,        // march outward from the center through each sample
  kGreedy,     // the colliding samples themselves
};

std::string_view to_string(CandidateGenerator g);
std::optional<CandidateGenerator> parse_generator(std::string_view name);

struct IrisOptions {
  double epsilon = 0.01;
  double delta = 0.05;
  double tau = 0.5;
  double stepback = 1e-2;
  int particles = 1000;
  int bisections = 10;
  int max_faces_per_iter = 10;
  int max_inner_iterations = 100;
  /// With 1, the single-loop budget schedule is used; otherwise the nested one.
  int max_outer_iterations = 2;
  /// Relative MVIE volume increase below which the alternation stops.
  double termination_threshold = 2e-2;
  double r_start = 1e-2;
  CandidateGenerator generator = CandidateGenerator::kBisection;
  /// Ray step as a fraction of the center-to-sample distance; 0 means
  /// 1 / bisections.
  double ray_step_fraction = 0.0;
  int mixing_steps = 0;  // 0 means 50 * dim
  int chains = 4;
  std::uint64_t rng_seed = 0;
  MvieOptions mvie;

  /// Optional local refinement of a candidate q0 (for instance a nonlinear
  /// closest-collision solve). Returning nullopt drops the candidate.
  std::function<std::optional<Vector>(const Vector& q0, const Ellipsoid& e,
                                      const HPolytope& P)>
      refine_candidate;

  TestSpec test_spec() const { return TestSpec{epsilon, delta, tau}; }
  bool nested_schedule() const { return max_outer_iterations > 1; }
  /// Throws IrisError or StatError on out-of-range values.
  void validate() const;
};

/// One SeparatingPlanes inner iteration.
struct InnerIterationLog {
  int outer = 0;
  int inner = 0;  // 1-based schedule index
  double delta_ik = 0.0;
  std::size_t samples_drawn = 0;
  std::size_t collisions_found = 0;  // over the whole batch
  TestOutcome test;
  std::size_t candidates = 0;
  int hyperplanes_added = 0;
};

struct OuterIterationLog {
  int outer = 0;
  int inner_iterations = 0;
  bool accepted = false;
  int faces = 0;
  double volume_proxy = 0.0;
  bool mvie_converged = false;
};

enum class TerminationReason {
  kAccepted,          // final polytope passed its test and contains the seed
  kSeedExcluded,      // the latest polytope no longer contains the seed
  kMaxIterations,     // inner-iteration budget exhausted without acceptance
  kCenterInCollision  // the next ellipsoid center collides
};

/// Why the alternation ended for accepted runs.
enum class AlternationStop { kNone, kVolumeConverged, kMaxOuterIterations };

std::string_view to_string(TerminationReason r);
std::string_view to_string(AlternationStop s);
std::optional<TerminationReason> parse_termination_reason(std::string_view s);
std::optional<AlternationStop> parse_alternation_stop(std::string_view s);

struct RegionReport {
  HPolytope polytope;
  Ellipsoid final_ellipsoid;
  int outer_iterations = 0;
  std::vector<InnerIterationLog> inner_log;
  std::vector<OuterIterationLog> outer_log;
  TerminationReason termination_reason = TerminationReason::kMaxIterations;
  AlternationStop alternation_stop = AlternationStop::kNone;
};

struct SeparatingPlanesResult {
  HPolytope polytope;
  bool accepted = false;
  std::vector<InnerIterationLog> log;
};

/// Grows a region around seed by alternating zero-order separating planes and
/// inscribed ellipsoids. Throws IrisError if the seed collides or lies outside
/// the domain, UnboundedPolytope for unbounded domains.
RegionReport iris_grow(const HPolytope& domain, const Vector& seed,
                       const CollisionWorld& world, const IrisOptions& opts);

/// Adds hyperplanes until the polytope passes the statistical test with budget
/// delta_{outer_i,k} (or delta_k in single-outer mode), or the inner budget
/// runs out. The polytope is reset to the domain on entry.
SeparatingPlanesResult zero_order_separating_planes(const HPolytope& domain,
                                                    const Ellipsoid& e, int outer_i,
                                                    const CollisionWorld& world,
                                                    const IrisOptions& opts);

/// Bisects N_b times on [c, q_col] keeping the in-collision endpoint.
Vector bisect_to_center(const Vector& q_col, const Vector& c,
                        const CollisionWorld& world, int n_steps);

/// First point c + j·step_fraction·(sample - c), j = 1, 2, ..., in collision;
/// nullopt once a step leaves P.
std::optional<Vector> ray_collision_search(const Vector& sample, const Vector& c,
                                           const HPolytope& P,
                                           const CollisionWorld& world,
                                           double step_fraction);

/// Samples inside P sorted ascending by ellipsoid metric (stable).
std::vector<Vector> greedy_candidates(const std::vector<Vector>& collision_samples,
                                      const Ellipsoid& e, const HPolytope& P);

struct PlacementResult {
  HPolytope polytope;
  int added = 0;
};

/// Sorts candidates by ellipsoid metric and adds a tangent hyperplane for each
/// one still inside the current polytope, up to max_faces planes. The stepback
/// is capped at half the center-to-candidate gap along the normal so the
/// ellipsoid center always stays strictly inside.
PlacementResult place_nonredundant_hyperplanes(const HPolytope& P,
                                               const Ellipsoid& e,
                                               std::vector<Vector> candidates,
                                               double stepback, int max_faces);

}  // namespace cfree
