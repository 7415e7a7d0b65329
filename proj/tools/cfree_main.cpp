#include "commands.hpp"

#include "cfree/scene_io.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

using cfree::IrisOptions;

std::string generator_name = "bisection";

void add_iris_flags(CLI::App* cmd, IrisOptions& o) {
  cmd->add_option("--epsilon", o.epsilon, "admissible collision fraction")->capture_default_str();
  cmd->add_option("--delta", o.delta, "failure probability")->capture_default_str();
  cmd->add_option("--tau", o.tau, "test slack in (0, 1]")->capture_default_str();
  cmd->add_option("--stepback", o.stepback, "hyperplane stepback")->capture_default_str();
  cmd->add_option("--particles", o.particles, "candidate samples per iteration")
      ->capture_default_str();
  cmd->add_option("--bisections", o.bisections, "bisection steps")->capture_default_str();
  cmd->add_option("--max-faces", o.max_faces_per_iter, "hyperplanes per inner iteration")
      ->capture_default_str();
  cmd->add_option("--max-inner", o.max_inner_iterations, "inner iteration budget")
      ->capture_default_str();
  cmd->add_option("--max-outer", o.max_outer_iterations, "outer iteration budget")
      ->capture_default_str();
  cmd->add_option("--term-threshold", o.termination_threshold,
                  "relative volume increase that stops the alternation")
      ->capture_default_str();
  cmd->add_option("--r-start", o.r_start, "radius of the starting ball")->capture_default_str();
  cmd->add_option("--generator", generator_name, "candidate generator")
      ->check(CLI::IsMember({"bisection", "ray", "greedy"}))
      ->capture_default_str();
  cmd->add_option("--mixing-steps", o.mixing_steps, "hit-and-run steps per sample, 0 = 50*dim")
      ->capture_default_str();
  cmd->add_option("--chains", o.chains, "hit-and-run chains")->capture_default_str();
  cmd->add_option("--rng-seed", o.rng_seed, "base random seed")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = cfree::cli;
  CLI::App app{"Grow probabilistically certified collision-free polytopes"};
  app.require_subcommand(1);

  cli::GrowArgs grow;
  auto* grow_cmd = app.add_subcommand("grow", "grow one region per scene seed");
  grow_cmd->add_option("scene", grow.scene, "scene JSON")->required();
  grow_cmd->add_option("--out", grow.out, "output directory")->capture_default_str();
  add_iris_flags(grow_cmd, grow.options);

  cli::VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "estimate a region's collision fraction");
  verify_cmd->add_option("region", verify.region, "region JSON")->required();
  verify_cmd->add_option("scene", verify.scene, "scene JSON")->required();
  verify_cmd->add_option("--samples", verify.samples, "oracle samples")->capture_default_str();
  verify_cmd->add_option("--rng-seed", verify.rng_seed, "oracle seed")->capture_default_str();

  cli::PlotArgs plot;
  auto* plot_cmd = app.add_subcommand("plot", "render a 2D scene and regions to SVG");
  plot_cmd->add_option("scene", plot.scene, "scene JSON")->required();
  plot_cmd->add_option("--region", plot.regions, "region JSON (repeatable)");
  plot_cmd->add_option("--out", plot.out, "output SVG")->required();
  plot_cmd->add_option("--raster", plot.raster, "obstacle raster cells per axis")
      ->capture_default_str();
  plot_cmd->add_option("--size", plot.size, "image size in pixels")->capture_default_str();

  cli::BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "repeated trials over a scene directory");
  bench_cmd->add_option("scene_dir", bench.scene_dir, "directory of scene JSON files")
      ->required();
  bench_cmd->add_option("--trials", bench.trials, "trials per seed")->capture_default_str();
  bench_cmd->add_option("--samples", bench.samples, "oracle samples per trial")
      ->capture_default_str();
  bench_cmd->add_option("--json", bench.json_out, "machine-readable summary path");
  add_iris_flags(bench_cmd, bench.options);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitUsage;
  }

  try {
    IrisOptions* opts = nullptr;
    if (*grow_cmd) opts = &grow.options;
    if (*bench_cmd) opts = &bench.options;
    if (opts) {
      opts->generator = *cfree::parse_generator(generator_name);
      try {
        opts->validate();
      } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::kExitUsage;
      }
    }
    if (*grow_cmd) return cli::cmd_grow(grow, std::cout, std::cerr);
    if (*verify_cmd) return cli::cmd_verify(verify, std::cout, std::cerr);
    if (*plot_cmd) return cli::cmd_plot(plot, std::cout, std::cerr);
    return cli::cmd_bench(bench, std::cout, std::cerr);
  } catch (const cfree::FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitFailure;
  }
}
