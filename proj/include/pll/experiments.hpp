#pragma once

// Built-in experiment recipes.  Each recipe validates every referenced
// parameter up front, runs its parameter points in a small work pool, and
// then writes one CSV table (one row per instance / parameter point / seed),
// one JSON sidecar (full parameter set, library version, fits, pass flags)
// and possibly extra files (an SVG illustration, a secondary table).  All
// outputs are written once, atomically, at the end; reruns with the same
// configuration produce byte-identical files.
//
// Recipes:
//   log-resistance    packed triangular-lattice disks; effective resistance
//                     across nested annuli against log radius
//   phi-scaling       probability of avoiding the starting point for T steps
//                     on a square grid; phi(T) * log T window check
//   startree-energy   energy of unit current flows under subdivision and the
//                     star-tree transform (ratios 2x exact, at most 4x)
//   supported-count   supported-point counts on random clouds against the
//                     delta^-2 log(1/delta) / s envelope
//   sharpness         bundled binary trees: bounded root resistance plus a
//                     stretched-exponential degree tail

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace pll {

struct ExperimentConfig {
  std::string recipe;
  std::filesystem::path out_dir;
  std::uint64_t seed = 1;
  int threads = 0;    // 0: use PLL_THREADS, else 1
  int instances = 3;  // independent instances per parameter point

  // log-resistance
  std::vector<int> disk_radii = {8, 16, 32, 64};

  // phi-scaling
  int grid_side = 200;
  std::vector<int> horizons = {100, 1000, 10000};
  long long trials = 20000;

  // startree-energy
  std::vector<int> triangulation_sizes = {40, 80, 160};
  long long flip_steps = 20000;

  // supported-count
  std::vector<int> cloud_sizes = {100, 200, 300};
  std::vector<double> deltas = {0.25, 0.125};
  std::vector<int> support_levels = {10, 20, 40};

  // sharpness
  int max_height = 30;
  double alpha = 0.5;
  int tail_height = 12;
};

struct ExperimentReport {
  std::filesystem::path csv;
  std::filesystem::path sidecar;
  std::vector<std::filesystem::path> extras;
  bool pass = false;  // every embedded invariant audit passed
};

ExperimentReport run_experiment(const ExperimentConfig& config);

// Worker count: `requested` if positive, otherwise hardware concurrency,
// in both cases capped by the PLL_THREADS environment variable.
int resolve_thread_count(int requested);

}  // namespace pll
