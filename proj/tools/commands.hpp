#pragma once

#include "cfree/iris.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace cfree::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitUsage = 2,
  kExitSeedInCollision = 3,
};

/// Exit code for a set of grow reports: 0 iff every run was accepted.
int grow_exit_code(const std::vector<TerminationReason>& reasons);

struct GrowArgs {
  std::filesystem::path scene;
  std::filesystem::path out = ".";
  IrisOptions options;
};

struct VerifyArgs {
  std::filesystem::path region;
  std::filesystem::path scene;
  std::size_t samples = 100000;
  std::uint64_t rng_seed = 0;
};

struct PlotArgs {
  std::vector<std::filesystem::path> regions;
  std::filesystem::path scene;
  std::filesystem::path out;
  int raster = 400;
  int size = 400;
};

struct BenchArgs {
  std::filesystem::path scene_dir;
  int trials = 10;
  std::size_t samples = 100000;
  std::filesystem::path json_out;
  IrisOptions options;
};

int cmd_grow(const GrowArgs& args, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err);
int cmd_plot(const PlotArgs& args, std::ostream& out, std::ostream& err);
int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err);

}  // namespace cfree::cli
