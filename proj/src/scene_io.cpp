#include "cfree/scene_io.hpp"

#include "cfree/linprog.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace cfree {
namespace {

using nlohmann::json;

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw FormatError(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

double as_number(const json& j, const char* what) {
  if (!j.is_number()) throw FormatError(std::string(what) + " must be a number");
  return j.get<double>();
}

Vector as_vector(const json& j, const char* what) {
  if (!j.is_array()) throw FormatError(std::string(what) + " must be an array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v[static_cast<Eigen::Index>(i)] = as_number(j[i], what);
  }
  return v;
}

Matrix as_matrix(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) {
    throw FormatError(std::string(what) + " must be a nonempty array of rows");
  }
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  Matrix m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < j.size(); ++r) {
    const Vector row = as_vector(j[r], what);
    if (static_cast<std::size_t>(row.size()) != cols) {
      throw FormatError(std::string(what) + " has ragged rows");
    }
    m.row(static_cast<Eigen::Index>(r)) = row.transpose();
  }
  return m;
}

json vector_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

json matrix_json(const Matrix& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) out.push_back(vector_json(m.row(r).transpose()));
  return out;
}

ConvexObstacle parse_obstacle(const json& j) {
  const std::string type = field(j, "type").get<std::string>();
  try {
    if (type == "disk" || type == "ball") {
      return make_obstacle(Ball{as_vector(field(j, "center"), "center"),
                                as_number(field(j, "radius"), "radius")});
    }
    if (type == "box") {
      return make_obstacle(AxisBox{as_vector(field(j, "lower"), "lower"),
                                   as_vector(field(j, "upper"), "upper")});
    }
    if (type == "polygon") {
      ConvexPolygon poly;
      for (const auto& v : field(j, "vertices")) {
        const Vector p = as_vector(v, "vertex");
        if (p.size() != 2) throw FormatError("polygon vertices must be 2D");
        poly.vertices.emplace_back(p[0], p[1]);
      }
      return make_obstacle(std::move(poly));
    }
  } catch (const GeometryError& e) {
    throw FormatError(std::string("invalid obstacle: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("invalid obstacle: ") + e.what());
  }
  throw FormatError("unknown obstacle type '" + type + "'");
}

std::vector<ConvexObstacle> parse_obstacles(const json& world) {
  std::vector<ConvexObstacle> out;
  if (!world.contains("obstacles")) return out;
  for (const auto& o : world.at("obstacles")) out.push_back(parse_obstacle(o));
  return out;
}

HPolytope parse_domain(const json& j) {
  const std::string type = field(j, "type").get<std::string>();
  try {
    if (type == "box") {
      return HPolytope::box(as_vector(field(j, "lower"), "lower"),
                            as_vector(field(j, "upper"), "upper"));
    }
    if (type == "hpolytope") {
      return HPolytope(as_matrix(field(j, "A"), "A"), as_vector(field(j, "b"), "b"));
    }
  } catch (const GeometryError& e) {
    throw FormatError(std::string("invalid domain: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("invalid domain: ") + e.what());
  }
  throw FormatError("unknown domain type '" + type + "'");
}

json options_json(const IrisOptions& o) {
  return json{{"epsilon", o.epsilon},
              {"delta", o.delta},
              {"tau", o.tau},
              {"stepback", o.stepback},
              {"particles", o.particles},
              {"bisections", o.bisections},
              {"max_faces_per_iter", o.max_faces_per_iter},
              {"max_inner_iterations", o.max_inner_iterations},
              {"max_outer_iterations", o.max_outer_iterations},
              {"termination_threshold", o.termination_threshold},
              {"r_start", o.r_start},
              {"generator", std::string(to_string(o.generator))},
              {"ray_step_fraction", o.ray_step_fraction},
              {"mixing_steps", o.mixing_steps},
              {"chains", o.chains},
              {"rng_seed", o.rng_seed},
              {"mvie_tol", o.mvie.tol},
              {"mvie_max_iterations", o.mvie.max_iterations}};
}

IrisOptions options_from_json(const json& j) {
  IrisOptions o;
  o.epsilon = field(j, "epsilon").get<double>();
  o.delta = field(j, "delta").get<double>();
  o.tau = field(j, "tau").get<double>();
  o.stepback = field(j, "stepback").get<double>();
  o.particles = field(j, "particles").get<int>();
  o.bisections = field(j, "bisections").get<int>();
  o.max_faces_per_iter = field(j, "max_faces_per_iter").get<int>();
  o.max_inner_iterations = field(j, "max_inner_iterations").get<int>();
  o.max_outer_iterations = field(j, "max_outer_iterations").get<int>();
  o.termination_threshold = field(j, "termination_threshold").get<double>();
  o.r_start = field(j, "r_start").get<double>();
  const auto gen = parse_generator(field(j, "generator").get<std::string>());
  if (!gen) throw FormatError("unknown generator");
  o.generator = *gen;
  o.ray_step_fraction = field(j, "ray_step_fraction").get<double>();
  o.mixing_steps = field(j, "mixing_steps").get<int>();
  o.chains = field(j, "chains").get<int>();
  o.rng_seed = field(j, "rng_seed").get<std::uint64_t>();
  o.mvie.tol = field(j, "mvie_tol").get<double>();
  o.mvie.max_iterations = field(j, "mvie_max_iterations").get<int>();
  return o;
}

json inner_json(const InnerIterationLog& e) {
  return json{{"outer", e.outer},
              {"inner", e.inner},
              {"delta_ik", e.delta_ik},
              {"samples_drawn", e.samples_drawn},
              {"collisions_found", e.collisions_found},
              {"m", e.test.m},
              {"successes", e.test.successes},
              {"threshold", e.test.threshold},
              {"verdict", std::string(to_string(e.test.verdict))},
              {"candidates", e.candidates},
              {"hyperplanes_added", e.hyperplanes_added}};
}

InnerIterationLog inner_from_json(const json& j) {
  InnerIterationLog e;
  e.outer = field(j, "outer").get<int>();
  e.inner = field(j, "inner").get<int>();
  e.delta_ik = field(j, "delta_ik").get<double>();
  e.samples_drawn = field(j, "samples_drawn").get<std::size_t>();
  e.collisions_found = field(j, "collisions_found").get<std::size_t>();
  e.test.m = field(j, "m").get<std::size_t>();
  e.test.successes = field(j, "successes").get<std::size_t>();
  e.test.threshold = field(j, "threshold").get<double>();
  e.test.verdict = field(j, "verdict").get<std::string>() == "accept" ? Verdict::kAccept
                                                                     : Verdict::kReject;
  e.candidates = field(j, "candidates").get<std::size_t>();
  e.hyperplanes_added = field(j, "hyperplanes_added").get<int>();
  return e;
}

json outer_json(const OuterIterationLog& e) {
  return json{{"outer", e.outer},
              {"inner_iterations", e.inner_iterations},
              {"accepted", e.accepted},
              {"faces", e.faces},
              {"volume_proxy", e.volume_proxy},
              {"mvie_converged", e.mvie_converged}};
}

OuterIterationLog outer_from_json(const json& j) {
  OuterIterationLog e;
  e.outer = field(j, "outer").get<int>();
  e.inner_iterations = field(j, "inner_iterations").get<int>();
  e.accepted = field(j, "accepted").get<bool>();
  e.faces = field(j, "faces").get<int>();
  e.volume_proxy = field(j, "volume_proxy").get<double>();
  e.mvie_converged = field(j, "mvie_converged").get<bool>();
  return e;
}

bool same_inner(const InnerIterationLog& a, const InnerIterationLog& b) {
  return a.outer == b.outer && a.inner == b.inner && a.delta_ik == b.delta_ik &&
         a.samples_drawn == b.samples_drawn && a.collisions_found == b.collisions_found &&
         a.test.m == b.test.m && a.test.successes == b.test.successes &&
         a.test.threshold == b.test.threshold && a.test.verdict == b.test.verdict &&
         a.candidates == b.candidates && a.hyperplanes_added == b.hyperplanes_added;
}

bool same_outer(const OuterIterationLog& a, const OuterIterationLog& b) {
  return a.outer == b.outer && a.inner_iterations == b.inner_iterations &&
         a.accepted == b.accepted && a.faces == b.faces &&
         a.volume_proxy == b.volume_proxy && a.mvie_converged == b.mvie_converged;
}

bool same_options(const IrisOptions& a, const IrisOptions& b) {
  return options_json(a) == options_json(b);
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Scene parse_scene(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("scene is not valid JSON: ") + e.what());
  }
  try {
    const int version = field(j, "version").get<int>();
    if (version != kSceneVersion) {
      throw FormatError("unsupported scene version " + std::to_string(version));
    }
    const json& wj = field(j, "world");
    const std::string type = field(wj, "type").get<std::string>();

    std::optional<HPolytope> domain;
    if (j.contains("domain")) domain = parse_domain(j.at("domain"));

    std::shared_ptr<const CollisionWorld> world;
    std::vector<ConvexObstacle> obstacles = parse_obstacles(wj);
    if (type == "point_robot") {
      if (!domain) throw FormatError("point_robot scenes need a domain");
      world = std::make_shared<PointRobotWorld>(domain->dim(), obstacles);
    } else if (type == "planar_arm") {
      PlanarArmWorld::Params p;
      for (const auto& l : field(wj, "link_lengths")) p.link_lengths.push_back(as_number(l, "link length"));
      if (wj.contains("link_radius")) p.link_radius = as_number(wj.at("link_radius"), "link_radius");
      if (wj.contains("base")) {
        const Vector base = as_vector(wj.at("base"), "base");
        if (base.size() != 2) throw FormatError("arm base must be 2D");
        p.base = Point2(base[0], base[1]);
      }
      p.obstacles = obstacles;
      if (wj.contains("joint_limits")) {
        for (const auto& lim : wj.at("joint_limits")) {
          const Vector v = as_vector(lim, "joint limit");
          if (v.size() != 2) throw FormatError("joint limits are [lo, hi] pairs");
          p.joint_limits.emplace_back(v[0], v[1]);
        }
      }
      if (wj.contains("self_collision")) p.self_collision = wj.at("self_collision").get<bool>();
      auto arm = std::make_shared<PlanarArmWorld>(std::move(p));
      if (!domain) domain = arm->joint_limit_domain();
      world = std::move(arm);
      obstacles.clear();
    } else {
      throw FormatError("unknown world type '" + type + "'");
    }

    if (domain->dim() != world->dim()) {
      throw FormatError("domain dimension " + std::to_string(domain->dim()) +
                        " does not match world dimension " +
                        std::to_string(world->dim()));
    }
    try {
      bounding_box(*domain);
    } catch (const GeometryError& e) {
      throw FormatError(std::string("domain must be bounded and nonempty: ") + e.what());
    }

    std::vector<Vector> seeds;
    if (j.contains("seeds")) {
      for (const auto& s : j.at("seeds")) {
        Vector q = as_vector(s, "seed");
        if (q.size() != domain->dim()) {
          throw FormatError("seed " + std::to_string(seeds.size()) +
                            " has the wrong dimension");
        }
        if (!domain->strictly_contains(q)) {
          throw FormatError("seed " + std::to_string(seeds.size()) +
                            " is not inside the domain");
        }
        seeds.push_back(std::move(q));
      }
    }
    return Scene{version, type, std::move(world), std::move(obstacles), *domain,
                 std::move(seeds)};
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed scene: ") + e.what());
  } catch (const DimensionMismatch& e) {
    throw FormatError(std::string("malformed scene: ") + e.what());
  } catch (const GeometryError& e) {
    throw FormatError(std::string("malformed scene: ") + e.what());
  }
}

Scene load_scene(const std::filesystem::path& path) {
  return parse_scene(read_text_file(path));
}

std::vector<std::size_t> colliding_seeds(const Scene& scene) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < scene.seeds.size(); ++i) {
    if (scene.world->check(scene.seeds[i])) out.push_back(i);
  }
  return out;
}

RegionFile make_region_file(const RegionReport& report, const Vector& seed,
                            const IrisOptions& opts) {
  RegionFile r{kRegionVersion,
               kToolVersion,
               opts.rng_seed,
               report.polytope,
               report.final_ellipsoid,
               seed,
               opts,
               report.termination_reason,
               report.alternation_stop,
               report.outer_iterations,
               report.inner_log,
               report.outer_log};
  r.options.refine_candidate = nullptr;
  return r;
}

std::string region_to_string(const RegionFile& r) {
  json inner = json::array();
  for (const auto& e : r.inner_log) inner.push_back(inner_json(e));
  json outer = json::array();
  for (const auto& e : r.outer_log) outer.push_back(outer_json(e));
  json j{{"version", r.version},
         {"tool_version", r.tool_version},
         {"rng_seed", r.rng_seed},
         {"dim", r.polytope.dim()},
         {"A", matrix_json(r.polytope.A())},
         {"b", vector_json(r.polytope.b())},
         {"ellipsoid", json{{"E", matrix_json(r.ellipsoid.E())},
                            {"center", vector_json(r.ellipsoid.center())}}},
         {"seed", vector_json(r.seed)},
         {"options", options_json(r.options)},
         {"report", json{{"termination_reason", std::string(to_string(r.termination_reason))},
                         {"alternation_stop", std::string(to_string(r.alternation_stop))},
                         {"outer_iterations", r.outer_iterations},
                         {"inner_log", inner},
                         {"outer_log", outer}}}};
  return j.dump(2) + "\n";
}

RegionFile parse_region(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("region is not valid JSON: ") + e.what());
  }
  try {
    const int version = field(j, "version").get<int>();
    if (version != kRegionVersion) {
      throw FormatError("unsupported region version " + std::to_string(version));
    }
    const int dim = field(j, "dim").get<int>();
    HPolytope P(as_matrix(field(j, "A"), "A"), as_vector(field(j, "b"), "b"));
    if (P.dim() != dim) throw FormatError("region A does not match its dim field");
    const json& ej = field(j, "ellipsoid");
    Ellipsoid e(as_matrix(field(ej, "E"), "E"), as_vector(field(ej, "center"), "center"));
    if (e.dim() != dim) throw FormatError("region ellipsoid does not match its dim field");
    Vector seed = as_vector(field(j, "seed"), "seed");
    if (seed.size() != dim) throw FormatError("region seed does not match its dim field");
    const json& rep = field(j, "report");
    const auto reason = parse_termination_reason(field(rep, "termination_reason").get<std::string>());
    const auto stop = parse_alternation_stop(field(rep, "alternation_stop").get<std::string>());
    if (!reason || !stop) throw FormatError("unknown termination reason");
    std::vector<InnerIterationLog> inner;
    for (const auto& e2 : field(rep, "inner_log")) inner.push_back(inner_from_json(e2));
    std::vector<OuterIterationLog> outer;
    for (const auto& e2 : field(rep, "outer_log")) outer.push_back(outer_from_json(e2));
    return RegionFile{version,
                      field(j, "tool_version").get<std::string>(),
                      field(j, "rng_seed").get<std::uint64_t>(),
                      std::move(P),
                      std::move(e),
                      std::move(seed),
                      options_from_json(field(j, "options")),
                      *reason,
                      *stop,
                      field(rep, "outer_iterations").get<int>(),
                      std::move(inner),
                      std::move(outer)};
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed region: ") + e.what());
  } catch (const GeometryError& e) {
    throw FormatError(std::string("malformed region: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("malformed region: ") + e.what());
  }
}

void save_region(const std::filesystem::path& path, const RegionFile& region) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path.string());
  out << region_to_string(region);
}

RegionFile load_region(const std::filesystem::path& path) {
  return parse_region(read_text_file(path));
}

bool operator==(const RegionFile& lhs, const RegionFile& rhs) {
  if (lhs.version != rhs.version || lhs.tool_version != rhs.tool_version ||
      lhs.rng_seed != rhs.rng_seed || !(lhs.polytope == rhs.polytope) ||
      lhs.ellipsoid.E() != rhs.ellipsoid.E() ||
      lhs.ellipsoid.center() != rhs.ellipsoid.center() ||
      lhs.seed.size() != rhs.seed.size() || lhs.seed != rhs.seed ||
      !same_options(lhs.options, rhs.options) ||
      lhs.termination_reason != rhs.termination_reason ||
      lhs.alternation_stop != rhs.alternation_stop ||
      lhs.outer_iterations != rhs.outer_iterations ||
      lhs.inner_log.size() != rhs.inner_log.size() ||
      lhs.outer_log.size() != rhs.outer_log.size()) {
    return false;
  }
  for (std::size_t i = 0; i < lhs.inner_log.size(); ++i) {
    if (!same_inner(lhs.inner_log[i], rhs.inner_log[i])) return false;
  }
  for (std::size_t i = 0; i < lhs.outer_log.size(); ++i) {
    if (!same_outer(lhs.outer_log[i], rhs.outer_log[i])) return false;
  }
  return true;
}

}  // namespace cfree
