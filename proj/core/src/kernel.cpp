#include "rdsm/kernel.hpp"

#include <cmath>

#include "rdsm/errors.hpp"

namespace rdsm {

cdouble eval_kernel(const Kernel& kernel, std::span<const cdouble> z,
                    std::span<const cdouble> w) {
  if (kernel.gamma <= 0.0) throw ConfigError("kernel bandwidth gamma must be > 0");
  if (z.size() != w.size())
    throw ConfigError("eval_kernel: dimension mismatch (" +
                      std::to_string(z.size()) + " vs " +
                      std::to_string(w.size()) + ")");
  if (z.empty()) throw ConfigError("eval_kernel: empty state");
  double d2 = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const cdouble diff = z[i] - w[i];
    d2 += diff.real() * diff.real() + diff.imag() * diff.imag();
  }
  if (!std::isfinite(d2)) throw ConfigError("eval_kernel: non-finite input");
  return {std::exp(-kernel.gamma * d2), 0.0};
}

GramBlock gram(const Kernel& kernel, const std::vector<StatePoint>& rows,
               const std::vector<StatePoint>& cols) {
  GramBlock block;
  block.entries.resize(static_cast<Eigen::Index>(rows.size()),
                       static_cast<Eigen::Index>(cols.size()));
  for (std::size_t p = 0; p < rows.size(); ++p)
    for (std::size_t q = 0; q < cols.size(); ++q)
      block.entries(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q)) =
          eval_kernel(kernel, rows[p], cols[q]);
  return block;
}

cdouble det_small(const Eigen::MatrixXcd& a) {
  const Eigen::Index m = a.rows();
  if (m != a.cols()) throw ConfigError("det_small: block is not square");
  if (m > 8) throw ConfigError("det_small: order > 8 unsupported");
  switch (m) {
    case 0:
      return {1.0, 0.0};
    case 1:
      return a(0, 0);
    case 2:
      return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    case 3:
      return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
             a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
             a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
    default:
      break;
  }
  // Partial-pivot Gaussian elimination for 4 <= m <= 8.
  Eigen::MatrixXcd u = a;
  cdouble det{1.0, 0.0};
  for (Eigen::Index k = 0; k < m; ++k) {
    Eigen::Index piv = k;
    double best = std::abs(u(k, k));
    for (Eigen::Index r = k + 1; r < m; ++r) {
      const double v = std::abs(u(r, k));
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best == 0.0) return {0.0, 0.0};
    if (piv != k) {
      u.row(piv).swap(u.row(k));
      det = -det;
    }
    det *= u(k, k);
    for (Eigen::Index r = k + 1; r < m; ++r) {
      const cdouble f = u(r, k) / u(k, k);
      u.row(r).tail(m - k) -= f * u.row(k).tail(m - k);
    }
  }
  return det;
}

cdouble det_small(const GramBlock& block) { return det_small(block.entries); }

}  // namespace rdsm
