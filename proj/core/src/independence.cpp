#include "rdsm/independence.hpp"

#include <algorithm>
#include <cmath>

#include "rdsm/errors.hpp"

namespace rdsm {

namespace {

Eigen::MatrixXd real_gram(const std::vector<StatePoint>& pts, const Kernel& kernel) {
  const auto n = static_cast<Eigen::Index>(pts.size());
  Eigen::MatrixXd g(n, n);
  for (Eigen::Index p = 0; p < n; ++p)
    for (Eigen::Index q = 0; q < n; ++q)
      g(p, q) = eval_kernel(kernel, pts[static_cast<std::size_t>(p)],
                            pts[static_cast<std::size_t>(q)])
                    .real();
  return g;
}

// Double centering without forming H: subtract row/column means, add back
// the grand mean. Algebraically identical to H G H.
Eigen::MatrixXd center(const Eigen::MatrixXd& g) {
  const Eigen::VectorXd row_mean = g.rowwise().mean();
  const Eigen::VectorXd col_mean = g.colwise().mean();
  const double grand = g.mean();
  return g - row_mean.replicate(1, g.cols()) -
         col_mean.transpose().replicate(g.rows(), 1) +
         Eigen::MatrixXd::Constant(g.rows(), g.cols(), grand);
}

std::vector<int> resolve_samples(const std::vector<int>& s, int t_len,
                                 const char* name) {
  std::vector<int> out = s;
  if (out.empty()) {
    if (t_len < 2) throw ConfigError("ensemble has no step past t=0");
    for (int t = 1; t < t_len; ++t) out.push_back(t);
    return out;
  }
  for (int t : out)
    if (t < 0 || t >= t_len)
      throw ConfigError(std::string(name) + ": time sample " + std::to_string(t) +
                        " out of range");
  return out;
}

}  // namespace

double hsic(const std::vector<StatePoint>& xs, const std::vector<StatePoint>& ys,
            const Kernel& kernel) {
  if (xs.size() != ys.size())
    throw ConfigError("hsic: sample counts differ");
  const auto n = static_cast<int>(xs.size());
  if (n < 2) throw ConfigError("hsic requires at least 2 samples");
  const Eigen::MatrixXd ck = center(real_gram(xs, kernel));
  const Eigen::MatrixXd cl = center(real_gram(ys, kernel));
  const double denom = static_cast<double>(n - 1) * static_cast<double>(n - 1);
  return ck.cwiseProduct(cl.transpose()).sum() / denom;
}

CenteredGram centered_gram_at_time(const PathEnsemble& ensemble, int t,
                                   const Kernel& kernel) {
  if (ensemble.n_paths < 2)
    throw ConfigError("centered_gram_at_time requires n_paths >= 2");
  if (t < 0 || t >= ensemble.t_len)
    throw ConfigError("centered_gram_at_time: t out of range");
  CenteredGram cg;
  cg.t = t;
  cg.matrix = center(real_gram(ensemble.slice_at_time(t), kernel));
  return cg;
}

double c_k_hat(const PathEnsemble& e1, const PathEnsemble& e2,
               const HsicConfig& cfg, const Kernel& kernel) {
  if (e1.n_paths != e2.n_paths)
    throw ConfigError("c_k_hat: path counts differ");
  const int n = e1.n_paths;
  if (n < 2) throw ConfigError("c_k_hat requires n_paths >= 2");
  const std::vector<int> s1 = resolve_samples(cfg.S1, e1.t_len, "S1");
  const std::vector<int> s2 = resolve_samples(cfg.S2, e2.t_len, "S2");
  std::vector<Eigen::MatrixXd> g1, g2;
  g1.reserve(s1.size());
  g2.reserve(s2.size());
  for (int s : s1) g1.push_back(centered_gram_at_time(e1, s, kernel).matrix);
  for (int t : s2) g2.push_back(centered_gram_at_time(e2, t, kernel).matrix);
  double acc = 0.0;
  for (const auto& a : g1)
    for (const auto& b : g2) acc += a.cwiseProduct(b.transpose()).sum();
  const double denom = static_cast<double>(n - 1) * static_cast<double>(n - 1) *
                       static_cast<double>(s1.size()) *
                       static_cast<double>(s2.size());
  return acc / denom;
}

double shift_hsic(const PathEnsemble& X, const PathEnsemble& Y,
                  const HsicConfig& cfg, const Kernel& kernel) {
  if (X.t_len != Y.t_len) throw ConfigError("shift_hsic: time lengths differ");
  const int T = X.t_len - 1;  // time window 1..T; index 0 holds the start
  if (T < 2) throw ConfigError("shift_hsic: series too short");
  if (cfg.head < 0 || cfg.head > cfg.tail)
    throw ConfigError("shift_hsic: need 0 <= head <= tail");
  if (cfg.tail >= T)
    throw ConfigError("shift_hsic: window exceeds series length");
  std::vector<StatePoint> xs(static_cast<std::size_t>(T)),
      ys(static_cast<std::size_t>(T));
  double acc = 0.0;
  int count = 0;
  for (int i = 0; i < X.n_paths; ++i)
    for (int j = 0; j < Y.n_paths; ++j)
      for (int s = cfg.head; s <= cfg.tail; ++s) {
        for (int t = 0; t < T; ++t) {
          xs[static_cast<std::size_t>(t)] = X.state_point(i, 1 + t);
          ys[static_cast<std::size_t>(t)] = Y.state_point(j, 1 + (t + s) % T);
        }
        acc += hsic(xs, ys, kernel);
        ++count;
      }
  return acc / count;
}

std::vector<double> minmax_normalize(const std::vector<double>& curve) {
  if (curve.empty()) throw ConfigError("minmax_normalize: empty curve");
  const auto [mn, mx] = std::minmax_element(curve.begin(), curve.end());
  if (*mx == *mn) return std::vector<double>(curve.size(), 0.0);
  std::vector<double> out;
  out.reserve(curve.size());
  for (double v : curve) out.push_back((v - *mn) / (*mx - *mn));
  return out;
}

}  // namespace rdsm
