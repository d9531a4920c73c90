#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <string>
#include <vector>

namespace rdsm {

struct HeatmapOptions {
  bool cell_labels = false;
  int cell_size = 48;
  std::string title;
};

// Self-contained SVG with a linear viridis ramp over [0, 1]; values outside
// [0, 1] are clamped and flagged in an SVG comment element.
void emit_heatmap(const Eigen::MatrixXd& matrix,
                  const std::vector<std::string>& labels,
                  const std::filesystem::path& path,
                  const HeatmapOptions& options = {});

}  // namespace rdsm
