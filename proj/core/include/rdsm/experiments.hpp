#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rdsm/config.hpp"
#include "rdsm/dataset.hpp"
#include "rdsm/metric.hpp"
#include "rdsm/simulate.hpp"

// Experiment runners wiring simulators, estimators and datasets together.
// Each runner reads its parameters from a Config, fans independent cells
// out to a worker pool, assembles results in a fixed order, and writes
// CSV/JSON/SVG artifacts. Outputs are byte-identical across runs and
// worker counts for a fixed configuration.

namespace rdsm {

struct RunOptions {
  std::filesystem::path out_dir = ".";
  int threads = 1;
  std::optional<std::uint64_t> seed;  // overrides the config seed
};

// The 3x3 rotation-parameter grid: one 9x9 similarity matrix per requested
// (sigma, N_s) panel and variant, as CSV plus SVG heatmap.
void run_rotation_grid(const Config& cfg, const RunOptions& opts);

// Mixed-series independence curves: shift-HSIC, the integrated HSIC
// criterion, and 1 - L along a phi grid; raw and min-max-normalized.
void run_independence_curve(const Config& cfg, const RunOptions& opts);

// The 9x9 grid of logistic-rotation pairs, one curve CSV per (i, j) panel.
void run_independence_grid9(const Config& cfg, const RunOptions& opts);

// UCR distance matrices (ensemble variant and/or singleton variant) with a
// JSON summary and a sampling manifest.
void run_ucr_distmat(const Config& cfg, const RunOptions& opts);

// Single-ensemble generation / pairwise metric / distance matrix commands.
void run_simulate(const Config& cfg, const RunOptions& opts);
void run_metric(const Config& cfg, const RunOptions& opts);
void run_distmat(const Config& cfg, const RunOptions& opts);

// The nine (|alpha|, theta) systems shared by the rotation grid and the
// independence grid, in table order.
struct RotationGridEntry {
  double alpha_mod;
  double theta;
  std::string label;
};
std::vector<RotationGridEntry> rotation_grid_entries();

// Runs fn(0..n-1) on up to `threads` workers; results must be written to
// per-index slots by the caller.
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

}  // namespace rdsm
