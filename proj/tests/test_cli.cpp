#include "cfree/scene_io.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

using namespace cfree;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("cfree_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

CliRun run(const std::string& args, const std::string& env = "") {
  const fs::path dir = fs::temp_directory_path();
  const fs::path out = dir / "cfree_cli_stdout.txt";
  const fs::path err = dir / "cfree_cli_stderr.txt";
  const std::string cmd = env + " " + std::string(CFREE_BIN) + " " + args + " >" +
                          out.string() + " 2>" + err.string();
  const int status = std::system(cmd.c_str());
  CliRun r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = read_text_file(out);
  r.err = read_text_file(err);
  return r;
}

std::string scene(const std::string& name) { return std::string(CFREE_SCENES) + "/" + name; }

void write(const fs::path& p, const std::string& text) {
  std::ofstream f(p);
  f << text;
}

}  // namespace

TEST(Cli, GrowObstacleFreeGivesDomain) {
  const fs::path out = scratch("free");
  const CliRun r = run("grow " + scene("free_box.json") + " --out " + out.string());
  ASSERT_EQ(r.code, 0) << r.err;
  const RegionFile region = load_region(out / "region_000.json");
  const Scene s = load_scene(scene("free_box.json"));
  EXPECT_EQ(region.polytope, s.domain);
  EXPECT_EQ(region.termination_reason, TerminationReason::kAccepted);
}

TEST(Cli, SeedInCollisionExitsThree) {
  const fs::path dir = scratch("collide");
  write(dir / "scene.json", R"({"version": 1,
    "world": {"type": "point_robot",
              "obstacles": [{"type": "disk", "center": [0.8, 0.8], "radius": 0.15}]},
    "domain": {"type": "box", "lower": [-1, -1], "upper": [1, 1]},
    "seeds": [[-0.5, -0.5], [0.8, 0.8]]})");
  const CliRun r = run("grow " + (dir / "scene.json").string() + " --out " + dir.string());
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("seed 1"), std::string::npos) << r.err;
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run("grow " + scene("free_box.json") + " --tau 2").code, 2);
  EXPECT_EQ(run("grow " + scene("free_box.json") + " --generator sideways").code, 2);
  EXPECT_EQ(run("grow /nonexistent/scene.json").code, 2);
  EXPECT_EQ(run("").code, 2);
}

TEST(Cli, NonAcceptedRunExitsOne) {
  const fs::path out = scratch("budget");
  const CliRun r = run("grow " + scene("disk_point.json") +
                    " --epsilon 0.001 --max-inner 1 --particles 5 --out " + out.string());
  EXPECT_EQ(r.code, 1) << r.out << r.err;
  EXPECT_EQ(load_region(out / "region_000.json").termination_reason,
            TerminationReason::kMaxIterations);
}

TEST(Cli, GrowIsByteIdentical) {
  const fs::path a = scratch("det_a");
  const fs::path b = scratch("det_b");
  const std::string args = "grow " + scene("disk_point.json") + " --rng-seed 99 --out ";
  ASSERT_EQ(run(args + a.string()).code, 0);
  ASSERT_EQ(run(args + b.string(), "CFREE_THREADS=3").code, 0);
  EXPECT_EQ(read_text_file(a / "region_000.json"), read_text_file(b / "region_000.json"));
}

TEST(Cli, VerifyFreeRegion) {
  const fs::path out = scratch("verify_free");
  ASSERT_EQ(run("grow " + scene("free_box.json") + " --out " + out.string()).code, 0);
  const CliRun r = run("verify " + (out / "region_000.json").string() + " " +
                    scene("free_box.json") + " --samples 2000");
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("fraction_in_collision 0.000000"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("faces 4"), std::string::npos);
}

TEST(Cli, VerifyHalfOverlap) {
  // Region [0,1]² against a box obstacle covering [0,0.5]×[0,1]: ratio 0.5.
  const fs::path dir = scratch("verify_half");
  write(dir / "scene.json", R"({"version": 1,
    "world": {"type": "point_robot",
              "obstacles": [{"type": "box", "lower": [0, 0], "upper": [0.5, 1]}]},
    "domain": {"type": "box", "lower": [-1, -1], "upper": [2, 2]}, "seeds": []})");
  const Scene free = load_scene(scene("free_box.json"));
  IrisOptions opts;
  RegionReport rep = iris_grow(free.domain, free.seeds[0], *free.world, opts);
  Vector lo(2), hi(2);
  lo << 0, 0;
  hi << 1, 1;
  rep.polytope = HPolytope::box(lo, hi);
  save_region(dir / "region.json", make_region_file(rep, free.seeds[0], opts));
  const CliRun r = run("verify " + (dir / "region.json").string() + " " +
                    (dir / "scene.json").string() + " --samples 100000");
  EXPECT_EQ(r.code, 1);
  const double est = std::stod(r.out.substr(r.out.find(' ') + 1));
  EXPECT_NEAR(est, 0.5, 0.01) << r.out;
}

TEST(Cli, VerifyDimensionMismatch) {
  const fs::path out = scratch("verify_dim");
  ASSERT_EQ(run("grow " + scene("free_box.json") + " --out " + out.string()).code, 0);
  EXPECT_EQ(run("verify " + (out / "region_000.json").string() + " " +
                scene("boxes_3d.json") + " --samples 100")
                .code,
            2);
}

TEST(Cli, PlotTwoRegionsAndDimensionCheck) {
  const fs::path out = scratch("plot");
  ASSERT_EQ(run("grow " + scene("free_box.json") + " --out " + out.string()).code, 0);
  const std::string reg = (out / "region_000.json").string();
  const CliRun r = run("plot " + scene("free_box.json") + " --region " + reg + " --region " +
                    reg + " --raster 40 --out " + (out / "a.svg").string());
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string svg = read_text_file(out / "a.svg");
  EXPECT_NE(svg.find("region-0"), std::string::npos);
  EXPECT_NE(svg.find("region-1"), std::string::npos);
  ASSERT_EQ(run("plot " + scene("free_box.json") + " --region " + reg + " --region " + reg +
                " --raster 40 --out " + (out / "b.svg").string())
                .code,
            0);
  EXPECT_EQ(svg, read_text_file(out / "b.svg"));
  const CliRun bad = run("plot " + scene("boxes_3d.json") + " --out " + (out / "c.svg").string());
  EXPECT_EQ(bad.code, 2);
  EXPECT_FALSE(bad.err.empty());
}

TEST(Cli, BenchOneTrialOneRowPerSeed) {
  const fs::path dir = scratch("bench");
  fs::copy_file(scene("boxes_3d.json"), dir / "boxes_3d.json");
  const CliRun r = run("bench " + dir.string() + " --trials 1 --samples 1000 --json " +
                    (dir / "out.json").string());
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("boxes_3d.json"), std::string::npos);
  std::size_t rows = 0;
  for (std::size_t p = 0; (p = r.out.find("boxes_3d.json", p)) != std::string::npos; ++p) ++rows;
  EXPECT_EQ(rows, 2u);
  EXPECT_NE(read_text_file(dir / "out.json").find("violation_rate"), std::string::npos);
}

TEST(Cli, BenchEmptyDirExitsTwo) {
  const fs::path dir = scratch("bench_empty");
  EXPECT_EQ(run("bench " + dir.string()).code, 2);
}
