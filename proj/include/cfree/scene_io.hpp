#pragma once

#include "cfree/collision.hpp"
#include "cfree/iris.hpp"

#include <cstdint>
#include <filesystem>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace cfree {

inline constexpr int kSceneVersion = 1;
inline constexpr int kRegionVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

/// Malformed or inconsistent scene / region file.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Scene {
  int version = kSceneVersion;
  std::string world_type;  // "point_robot" or "planar_arm"
  std::shared_ptr<const CollisionWorld> world;
  /// Obstacles of a point_robot world (usable by the convex baseline).
  std::vector<ConvexObstacle> obstacles;
  HPolytope domain;
  std::vector<Vector> seeds;
};

Scene parse_scene(const std::string& json_text);
Scene load_scene(const std::filesystem::path& path);

/// Indices of seeds that are in collision.
std::vector<std::size_t> colliding_seeds(const Scene& scene);

struct RegionFile {
  int version = kRegionVersion;
  std::string tool_version = kToolVersion;
  std::uint64_t rng_seed = 0;
  HPolytope polytope;
  Ellipsoid ellipsoid;
  Vector seed;
  IrisOptions options;  // refine_candidate is not serialized
  TerminationReason termination_reason = TerminationReason::kMaxIterations;
  AlternationStop alternation_stop = AlternationStop::kNone;
  int outer_iterations = 0;
  std::vector<InnerIterationLog> inner_log;
  std::vector<OuterIterationLog> outer_log;
};

RegionFile make_region_file(const RegionReport& report, const Vector& seed,
                            const IrisOptions& opts);

std::string region_to_string(const RegionFile& region);
RegionFile parse_region(const std::string& json_text);

void save_region(const std::filesystem::path& path, const RegionFile& region);
RegionFile load_region(const std::filesystem::path& path);

/// Field-by-field equality (exact on all floating-point values).
bool operator==(const RegionFile& lhs, const RegionFile& rhs);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace cfree
