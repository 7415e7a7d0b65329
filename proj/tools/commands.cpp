#include "commands.hpp"

#include "cfree/linprog.hpp"
#include "cfree/parallel.hpp"
#include "cfree/scene_io.hpp"
#include "cfree/svg.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

namespace cfree::cli {
namespace {

std::string region_name(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "region_%03zu.json", i);
  return buf;
}

struct MeanStd {
  double mean = 0.0;
  double stddev = 0.0;
};

MeanStd mean_std(const std::vector<double>& xs) {
  MeanStd r;
  if (xs.empty()) return r;
  for (double x : xs) r.mean += x;
  r.mean /= static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - r.mean) * (x - r.mean);
    r.stddev = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  return r;
}

FractionEstimate oracle_fraction(const CollisionWorld& world, const HPolytope& P,
                                 std::size_t n, std::uint64_t seed) {
  SamplerConfig cfg;
  cfg.rng_seed = seed;
  cfg.start = chebyshev_ball(P).center;
  return fraction_in_collision(world, P, n, cfg);
}

}  // namespace

int grow_exit_code(const std::vector<TerminationReason>& reasons) {
  const bool all = std::all_of(reasons.begin(), reasons.end(), [](TerminationReason r) {
    return r == TerminationReason::kAccepted;
  });
  return all ? kExitOk : kExitFailure;
}

int cmd_grow(const GrowArgs& args, std::ostream& out, std::ostream& err) {
  const Scene scene = load_scene(args.scene);
  args.options.validate();
  const auto bad = colliding_seeds(scene);
  if (!bad.empty()) {
    for (std::size_t i : bad) err << "error: seed " << i << " is in collision\n";
    return kExitSeedInCollision;
  }
  if (scene.seeds.empty()) {
    err << "error: scene has no seeds\n";
    return kExitUsage;
  }
  std::filesystem::create_directories(args.out);
  std::vector<TerminationReason> reasons;
  for (std::size_t i = 0; i < scene.seeds.size(); ++i) {
    IrisOptions opts = args.options;
    opts.rng_seed = derive_seed(args.options.rng_seed, i);
    const RegionReport report = iris_grow(scene.domain, scene.seeds[i], *scene.world, opts);
    const auto path = args.out / region_name(i);
    save_region(path, make_region_file(report, scene.seeds[i], opts));
    reasons.push_back(report.termination_reason);
    out << "seed " << i << ": " << to_string(report.termination_reason) << ", "
        << report.polytope.num_faces() << " faces, " << report.outer_iterations
        << " outer iterations -> " << path.string() << "\n";
  }
  return grow_exit_code(reasons);
}

int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
  const RegionFile region = load_region(args.region);
  const Scene scene = load_scene(args.scene);
  if (region.polytope.dim() != scene.world->dim()) {
    err << "error: region dimension " << region.polytope.dim()
        << " does not match scene dimension " << scene.world->dim() << "\n";
    return kExitUsage;
  }
  if (args.samples == 0) {
    err << "error: --samples must be positive\n";
    return kExitUsage;
  }
  const FractionEstimate f =
      oracle_fraction(*scene.world, region.polytope, args.samples, args.rng_seed);
  const double eps = region.options.epsilon;
  const bool ok = f.estimate - f.half_width <= eps;
  char line[256];
  std::snprintf(line, sizeof(line),
                "fraction_in_collision %.6f +- %.6f (n = %zu)\nvolume_proxy %.9g\nfaces %d\n"
                "epsilon %.9g: %s\n",
                f.estimate, f.half_width, f.n, ellipsoid_volume_proxy(region.ellipsoid),
                region.polytope.num_faces(), eps, ok ? "ok" : "exceeded");
  out << line;
  return ok ? kExitOk : kExitFailure;
}

int cmd_plot(const PlotArgs& args, std::ostream& out, std::ostream& err) {
  const Scene scene = load_scene(args.scene);
  if (scene.world->dim() != 2) {
    err << "error: plot needs a 2D configuration space, scene has dimension "
        << scene.world->dim() << "\n";
    return kExitUsage;
  }
  std::vector<HPolytope> polys;
  std::vector<Ellipsoid> ellipses;
  std::vector<Vector> seeds;
  for (const auto& path : args.regions) {
    RegionFile r = load_region(path);
    if (r.polytope.dim() != 2) {
      err << "error: region " << path.string() << " is not 2D\n";
      return kExitUsage;
    }
    polys.push_back(r.polytope);
    ellipses.push_back(r.ellipsoid);
    seeds.push_back(r.seed);
  }
  if (args.regions.empty()) seeds = scene.seeds;
  SvgOptions opts;
  opts.raster = args.raster;
  opts.width = opts.height = args.size;
  std::ofstream f(args.out, std::ios::binary);
  if (!f) {
    err << "error: cannot write " << args.out.string() << "\n";
    return kExitFailure;
  }
  f << render_svg(scene.domain, *scene.world, polys, ellipses, seeds, opts);
  out << "wrote " << args.out.string() << "\n";
  return kExitOk;
}

int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err) {
  args.options.validate();
  if (args.trials < 1) {
    err << "error: --trials must be >= 1\n";
    return kExitUsage;
  }
  std::vector<std::filesystem::path> files;
  if (std::filesystem::is_directory(args.scene_dir)) {
    for (const auto& entry : std::filesystem::directory_iterator(args.scene_dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".json") {
        files.push_back(entry.path());
      }
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    err << "error: no scene files in " << args.scene_dir.string() << "\n";
    return kExitUsage;
  }

  struct Trial {
    double seconds = 0.0;
    double faces = 0.0;
    double proxy = 0.0;
    double fraction = 0.0;
    bool accepted = false;
  };

  nlohmann::json rows = nlohmann::json::array();
  char line[512];
  std::snprintf(line, sizeof(line), "%-24s %4s %6s %18s %16s %18s %10s %9s %10s\n", "scene",
                "seed", "trials", "runtime_s", "faces", "volume_proxy", "fraction",
                "accepted", "violations");
  out << line;
  for (std::size_t s = 0; s < files.size(); ++s) {
    const Scene scene = load_scene(files[s]);
    const auto bad = colliding_seeds(scene);
    if (!bad.empty()) {
      err << "error: " << files[s].string() << ": seed " << bad.front()
          << " is in collision\n";
      return kExitSeedInCollision;
    }
    for (std::size_t q = 0; q < scene.seeds.size(); ++q) {
      std::vector<Trial> trials(static_cast<std::size_t>(args.trials));
      parallel_for(
          trials.size(),
          [&](std::size_t t) {
            IrisOptions opts = args.options;
            opts.rng_seed = derive_seed(args.options.rng_seed, s, q, t);
            const auto t0 = std::chrono::steady_clock::now();
            const RegionReport report = iris_grow(scene.domain, scene.seeds[q], *scene.world, opts);
            const auto t1 = std::chrono::steady_clock::now();
            Trial& tr = trials[t];
            tr.seconds = std::chrono::duration<double>(t1 - t0).count();
            tr.faces = report.polytope.num_faces();
            tr.proxy = ellipsoid_volume_proxy(report.final_ellipsoid);
            tr.accepted = report.termination_reason == TerminationReason::kAccepted;
            tr.fraction = oracle_fraction(*scene.world, report.polytope, args.samples,
                                          derive_seed(opts.rng_seed, 0x6f7261636c65ULL))
                              .estimate;
          },
          1);
      std::vector<double> secs, faces, proxies, fractions;
      int accepted = 0, violations = 0;
      for (const auto& tr : trials) {
        secs.push_back(tr.seconds);
        faces.push_back(tr.faces);
        proxies.push_back(tr.proxy);
        fractions.push_back(tr.fraction);
        accepted += tr.accepted ? 1 : 0;
        violations += tr.fraction > args.options.epsilon ? 1 : 0;
      }
      const MeanStd rt = mean_std(secs), fc = mean_std(faces), px = mean_std(proxies),
                    fr = mean_std(fractions);
      const double n = static_cast<double>(args.trials);
      const std::string name = files[s].filename().string();
      std::snprintf(line, sizeof(line),
                    "%-24s %4zu %6d %8.3f +- %6.3f %7.1f +- %5.1f %8.3f +- %6.3f %10.5f %9.3f %10.3f\n",
                    name.c_str(), q, args.trials, rt.mean, rt.stddev, fc.mean, fc.stddev,
                    px.mean, px.stddev, fr.mean, accepted / n, violations / n);
      out << line;
      rows.push_back({{"scene", name},
                      {"seed", q},
                      {"trials", args.trials},
                      {"runtime_mean", rt.mean},
                      {"runtime_stddev", rt.stddev},
                      {"faces_mean", fc.mean},
                      {"faces_stddev", fc.stddev},
                      {"volume_proxy_mean", px.mean},
                      {"volume_proxy_stddev", px.stddev},
                      {"fraction_mean", fr.mean},
                      {"fraction_stddev", fr.stddev},
                      {"accepted_fraction", accepted / n},
                      {"violation_rate", violations / n}});
    }
  }
  if (!args.json_out.empty()) {
    std::ofstream f(args.json_out, std::ios::binary);
    if (!f) {
      err << "error: cannot write " << args.json_out.string() << "\n";
      return kExitFailure;
    }
    nlohmann::json doc{{"epsilon", args.options.epsilon},
                       {"delta", args.options.delta},
                       {"samples", args.samples},
                       {"rows", rows}};
    f << doc.dump(2) << "\n";
  }
  return kExitOk;
}

}  // namespace cfree::cli
