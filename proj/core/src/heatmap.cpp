#include "rdsm/heatmap.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "rdsm/errors.hpp"

namespace rdsm {

namespace {

// Coarse viridis control points, linearly interpolated.
struct Rgb {
  double r, g, b;
};
constexpr Rgb kViridis[] = {
    {0.267, 0.005, 0.329}, {0.283, 0.141, 0.458}, {0.254, 0.265, 0.530},
    {0.207, 0.372, 0.553}, {0.164, 0.471, 0.558}, {0.128, 0.567, 0.551},
    {0.135, 0.659, 0.518}, {0.267, 0.749, 0.441}, {0.478, 0.821, 0.318},
    {0.741, 0.873, 0.150}, {0.993, 0.906, 0.144}};

std::string viridis(double v) {
  v = std::clamp(v, 0.0, 1.0);
  const int n = static_cast<int>(std::size(kViridis)) - 1;
  const double x = v * n;
  const int i = std::min(static_cast<int>(x), n - 1);
  const double f = x - i;
  const Rgb& a = kViridis[i];
  const Rgb& b = kViridis[i + 1];
  char buf[8];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x",
                static_cast<int>(255.0 * (a.r + f * (b.r - a.r)) + 0.5),
                static_cast<int>(255.0 * (a.g + f * (b.g - a.g)) + 0.5),
                static_cast<int>(255.0 * (a.b + f * (b.b - a.b)) + 0.5));
  return buf;
}

}  // namespace

void emit_heatmap(const Eigen::MatrixXd& matrix,
                  const std::vector<std::string>& labels,
                  const std::filesystem::path& path,
                  const HeatmapOptions& options) {
  const Eigen::Index n = matrix.rows();
  if (n != matrix.cols()) throw ConfigError("emit_heatmap: matrix must be square");
  if (!labels.empty() && static_cast<Eigen::Index>(labels.size()) != n)
    throw ConfigError("emit_heatmap: label count mismatch");
  const int cs = options.cell_size;
  const int margin_left = labels.empty() ? 10 : 110;
  const int margin_top = options.title.empty() ? 10 : 34;
  const int margin_bottom = labels.empty() ? 10 : 110;
  const int width = margin_left + cs * static_cast<int>(n) + 10;
  const int height = margin_top + cs * static_cast<int>(n) + margin_bottom;

  std::ofstream out(path);
  if (!out) throw DataError("cannot open for writing: " + path.string());
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" font-family=\"sans-serif\">\n";
  if (!options.title.empty())
    out << "  <text x=\"" << margin_left << "\" y=\"20\" font-size=\"14\">"
        << options.title << "</text>\n";
  bool clamped = false;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double v = matrix(i, j);
      if (v < 0.0 || v > 1.0) clamped = true;
      const int x = margin_left + cs * static_cast<int>(j);
      const int y = margin_top + cs * static_cast<int>(i);
      out << "  <rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << cs
          << "\" height=\"" << cs << "\" fill=\"" << viridis(v) << "\"/>\n";
      if (options.cell_labels) {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "%.3f", v);
        out << "  <text x=\"" << x + cs / 2 << "\" y=\"" << y + cs / 2 + 4
            << "\" font-size=\"10\" text-anchor=\"middle\" fill=\"white\">" << buf
            << "</text>\n";
      }
    }
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const int y = margin_top + cs * static_cast<int>(i) + cs / 2 + 4;
    out << "  <text x=\"" << margin_left - 6 << "\" y=\"" << y
        << "\" font-size=\"11\" text-anchor=\"end\">" << labels[i] << "</text>\n";
    const int x = margin_left + cs * static_cast<int>(i) + cs / 2;
    const int yb = margin_top + cs * static_cast<int>(n) + 6;
    out << "  <text x=\"" << x << "\" y=\"" << yb
        << "\" font-size=\"11\" text-anchor=\"start\" transform=\"rotate(60 " << x
        << " " << yb << ")\">" << labels[i] << "</text>\n";
  }
  if (clamped)
    out << "  <!-- values outside [0,1] were clamped for rendering -->\n";
  out << "</svg>\n";
  if (!out) throw DataError("write failed: " + path.string());
}

}  // namespace rdsm
