// Acceptance suite: one pass/fail line per criterion. Exit status is
// non-zero when any criterion fails; skipped criteria (missing optional
// data) do not fail the run.
//
// `acceptance --write-golden` regenerates the frozen rotation-grid matrix
// in the test data directory from the brute-force oracle.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "rdsm/config.hpp"
#include "rdsm/dataset.hpp"
#include "rdsm/experiments.hpp"
#include "rdsm/independence.hpp"
#include "rdsm/metric.hpp"
#include "rdsm/rng.hpp"
#include "rdsm/simulate.hpp"

namespace fs = std::filesystem;
using rdsm::cdouble;
using rdsm::Kernel;
using rdsm::MetricConfig;
using rdsm::PathEnsemble;

#ifndef RDSM_TEST_DATA_DIR
#define RDSM_TEST_DATA_DIR "."
#endif

namespace {

struct Outcome {
  bool pass = true;
  bool skipped = false;
  std::string detail;
};

std::vector<int> default_tau(int t_len) {
  std::vector<int> tau;
  for (int t = 1; t < t_len; ++t) tau.push_back(t);
  return tau;
}

// The nine rotation systems at the given noise level, T+1 states each.
std::vector<PathEnsemble> grid_ensembles(double sigma, int ns, int T,
                                         std::uint64_t seed) {
  std::vector<PathEnsemble> out;
  const auto entries = rdsm::rotation_grid_entries();
  for (std::size_t s = 0; s < entries.size(); ++s) {
    rdsm::RotationSpec spec;
    spec.alpha_mod = entries[s].alpha_mod;
    spec.theta = entries[s].theta;
    spec.sigma = sigma;
    // One shared noise stream per grid: the paired estimator (criterion 6)
    // compares path p to path p, so like dynamics must see like noise.
    out.push_back(rdsm::simulate_rotation(
        spec, ns, T + 1, rdsm::rng::counter_hash(seed, 0, 0, 0x0acc)));
  }
  return out;
}

double spearman_rho(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = x.size();
  auto ranks = [n](const std::vector<double>& v) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return v[a] < v[b];
    });
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i) r[idx[i]] = static_cast<double>(i);
    return r;
  };
  const auto rx = ranks(x), ry = ranks(y);
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += rx[i];
    my += ry[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

// Oracle L for two noiseless singleton ensembles at m = 1.
double oracle_L1(const PathEnsemble& a, const PathEnsemble& b) {
  const auto tau = default_tau(a.t_len);
  const double l12 = oracle::triple_mean(a, b, tau, 0.5);
  const double l11 = oracle::triple_mean(a, a, tau, 0.5);
  const double l22 = oracle::triple_mean(b, b, tau, 0.5);
  return l12 * l12 / (l11 * l22);
}

Eigen::MatrixXd oracle_deterministic_grid(int T) {
  const auto es = grid_ensembles(0.0, 1, T, 0);
  Eigen::MatrixXd L(9, 9);
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j)
      L(i, j) = oracle_L1(es[static_cast<std::size_t>(i)],
                          es[static_cast<std::size_t>(j)]);
  return L;
}

fs::path golden_path() {
  return fs::path(RDSM_TEST_DATA_DIR) / "golden_rotation_grid_L1.csv";
}

void write_golden() {
  const Eigen::MatrixXd L = oracle_deterministic_grid(20);
  std::vector<std::string> labels;
  for (const auto& e : rdsm::rotation_grid_entries()) labels.push_back(e.label);
  rdsm::DistanceMatrix dm{labels, L};
  rdsm::save_distance_matrix_csv(dm, golden_path(),
                                 "oracle L matrix, sigma=0 T=20 m=1");
  std::cout << "wrote " << golden_path() << "\n";
}

// ---- criteria -------------------------------------------------------------

Outcome criterion1_oracle_equivalence() {
  std::mt19937 gen(12345);
  double worst = 0.0;
  for (int rep = 0; rep < 50; ++rep) {
    const int m = 1 + static_cast<int>(gen() % 2);
    const int d = 1 + static_cast<int>(gen() % 2);
    const int n1 = 2 + static_cast<int>(gen() % 3);
    const int n2 = 2 + static_cast<int>(gen() % 3);
    const int n_tau = 2 + static_cast<int>(gen() % 4);
    const auto e1 = oracle::random_ensemble(n1, n_tau + 1, d, gen());
    auto e2 = oracle::random_ensemble(n2, n_tau + 1, d, gen());
    const auto tau = default_tau(n_tau + 1);
    MetricConfig cfg;
    cfg.m = m;

    const cdouble li = rdsm::estimate_l(e1, e2, cfg);
    const cdouble oi = oracle::estimate_l(e1, e2, tau, m, 0.5);
    worst = std::max(worst, std::abs(li - oi) / (1.0 + std::abs(oi)));

    auto e2s = oracle::random_ensemble(n1, n_tau + 1, d, gen());
    cfg.variant = rdsm::MetricVariant::SharedOmega;
    const cdouble lt = rdsm::estimate_l_tilde(e1, e2s, cfg);
    const cdouble ot = oracle::estimate_l_tilde(e1, e2s, tau, m, 0.5);
    worst = std::max(worst, std::abs(lt - ot) / (1.0 + std::abs(ot)));
  }
  std::ostringstream d;
  d << "max relative error " << worst << " (tol 1e-12)";
  return {worst <= 1e-12, false, d.str()};
}

Outcome criterion2_kmmd_reduction() {
  std::mt19937 gen(777);
  double worst = 0.0;
  for (int rep = 0; rep < 20; ++rep) {
    const auto e1 = oracle::random_ensemble(2 + static_cast<int>(gen() % 4), 6, 1, gen());
    const auto e2 = oracle::random_ensemble(2 + static_cast<int>(gen() % 4), 6, 1, gen());
    MetricConfig cfg;
    const cdouble got = rdsm::estimate_l(e1, e2, cfg);
    const double want = oracle::triple_mean(e1, e2, default_tau(6), 0.5);
    worst = std::max(worst, std::abs(got - cdouble{want, 0.0}) / (1.0 + std::abs(want)));
  }
  std::ostringstream d;
  d << "max relative error " << worst << " (tol 1e-12)";
  return {worst <= 1e-12, false, d.str()};
}

Outcome criterion3_gram_psd() {
  const auto es = grid_ensembles(0.1, 10, 20, 3);
  MetricConfig cfg;
  Eigen::MatrixXcd G(9, 9);
  for (int i = 0; i < 9; ++i)
    for (int j = i; j < 9; ++j) {
      const cdouble v = rdsm::estimate_l(es[static_cast<std::size_t>(i)],
                                         es[static_cast<std::size_t>(j)], cfg);
      G(i, j) = v;
      G(j, i) = std::conj(v);
    }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(G);
  const double mn = eig.eigenvalues().minCoeff();
  const double mx = eig.eigenvalues().maxCoeff();
  std::ostringstream d;
  d << "min eig " << mn << ", max eig " << mx;
  return {mn >= -1e-8 * mx, false, d.str()};
}

Outcome criterion4_self_normalization() {
  const auto es = grid_ensembles(0.1, 10, 20, 3);
  for (auto variant : {rdsm::MetricVariant::IndependentOmega,
                       rdsm::MetricVariant::SharedOmega}) {
    MetricConfig cfg;
    cfg.m = variant == rdsm::MetricVariant::SharedOmega ? 2 : 1;
    cfg.variant = variant;
    for (const auto& e : es) {
      const auto v = rdsm::metric_L(e, e, cfg);
      if (v.L != 1.0) return {false, false, "metric_L(E, E) != 1"};
    }
  }
  MetricConfig cfg;
  const auto dm = rdsm::distance_matrix(es, cfg);
  const double diag = dm.values.diagonal().cwiseAbs().maxCoeff();
  std::ostringstream d;
  d << "self-similarity exactly 1; max |diagonal| " << diag;
  return {diag <= 1e-9, false, d.str()};
}

Outcome criterion5_deterministic_grid() {
  const auto es = grid_ensembles(0.0, 1, 20, 0);
  MetricConfig cfg;
  Eigen::MatrixXd L(9, 9);
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j)
      L(i, j) = rdsm::metric_L(es[static_cast<std::size_t>(i)],
                               es[static_cast<std::size_t>(j)], cfg)
                    .L;

  if (!fs::exists(golden_path()))
    return {false, false, "golden file missing: " + golden_path().string()};
  const auto golden = rdsm::load_distance_matrix_csv(golden_path());
  const double dev = (L - golden.values).cwiseAbs().maxCoeff();
  if (dev > 1e-10) {
    std::ostringstream d;
    d << "deviation from oracle golden " << dev;
    return {false, false, d.str()};
  }

  double min_margin = 1.0;
  for (int i = 0; i < 9; ++i) {
    for (int j = 0; j < 9; ++j) {
      if (i == j) continue;
      if (L(i, j) >= L(i, i))
        return {false, false, "row maximum off the diagonal"};
      min_margin = std::min(min_margin, 1.0 - L(i, j));
    }
  }
  std::ostringstream d;
  d << "matches oracle golden (dev " << dev << "), min off-diagonal margin "
    << min_margin;
  return {min_margin >= 1e-3, false, d.str()};
}

Outcome criterion6_sample_count_improvement() {
  const Eigen::MatrixXd ref = [] {
    const auto es = grid_ensembles(0.0, 1, 20, 0);
    MetricConfig cfg;
    cfg.m = 2;
    cfg.variant = rdsm::MetricVariant::SharedOmega;
    Eigen::MatrixXd L(9, 9);
    for (int i = 0; i < 9; ++i)
      for (int j = 0; j < 9; ++j)
        L(i, j) = rdsm::metric_L(es[static_cast<std::size_t>(i)],
                                 es[static_cast<std::size_t>(j)], cfg)
                      .L;
    return L;
  }();

  auto noisy_mad = [&ref](int ns, std::uint64_t seed) {
    const auto es = grid_ensembles(0.1, ns, 20, seed);
    MetricConfig cfg;
    cfg.m = 2;
    cfg.variant = rdsm::MetricVariant::SharedOmega;
    Eigen::MatrixXd L(9, 9);
    for (int i = 0; i < 9; ++i)
      for (int j = 0; j < 9; ++j)
        L(i, j) = rdsm::metric_L(es[static_cast<std::size_t>(i)],
                                 es[static_cast<std::size_t>(j)], cfg)
                      .L;
    return (L - ref).cwiseAbs().mean();
  };

  double mad1 = 0.0, mad10 = 0.0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    mad1 += noisy_mad(1, seed);
    mad10 += noisy_mad(10, seed);
  }
  mad1 /= 5.0;
  mad10 /= 5.0;
  std::ostringstream d;
  d << "mean MAD vs deterministic: Ns=1 " << mad1 << ", Ns=10 " << mad10;
  return {mad10 < mad1, false, d.str()};
}

Outcome criterion7_hsic_identities() {
  Kernel k;
  std::mt19937 gen(31415);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  double worst = 0.0;
  for (int rep = 0; rep < 10; ++rep) {
    const int n = 5 + static_cast<int>(gen() % 6);
    std::vector<rdsm::StatePoint> xs, ys;
    for (int i = 0; i < n; ++i) {
      xs.push_back({{u(gen), u(gen)}});
      ys.push_back({{u(gen), u(gen)}});
    }
    Eigen::MatrixXd K(n, n), Lm(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        K(i, j) = std::exp(-0.5 * std::norm(xs[static_cast<std::size_t>(i)][0] -
                                            xs[static_cast<std::size_t>(j)][0]));
        Lm(i, j) = std::exp(-0.5 * std::norm(ys[static_cast<std::size_t>(i)][0] -
                                             ys[static_cast<std::size_t>(j)][0]));
      }
    const Eigen::MatrixXd H = Eigen::MatrixXd::Identity(n, n) -
                              Eigen::MatrixXd::Constant(n, n, 1.0 / n);
    const double want = (H * K * H * (H * Lm * H)).trace() / ((n - 1.0) * (n - 1.0));
    worst = std::max(worst, std::abs(rdsm::hsic(xs, ys, k) - want));
  }

  rdsm::RotationSpec sx;
  sx.sigma = 0.2;
  rdsm::RotationSpec sy;
  sy.theta = 1.0 / 3.0;
  sy.sigma = 0.2;
  const auto X = rdsm::simulate_rotation(sx, 6, 7, 5);
  const auto Y = rdsm::simulate_rotation(sy, 6, 7, 6);
  rdsm::HsicConfig hc;
  hc.S1 = {1, 2, 4};
  hc.S2 = {3, 5};
  double mean = 0.0;
  for (int s : hc.S1)
    for (int t : hc.S2) {
      std::vector<rdsm::StatePoint> xs, ys;
      for (int p = 0; p < 6; ++p) {
        xs.push_back(X.state_point(p, s));
        ys.push_back(Y.state_point(p, t));
      }
      mean += rdsm::hsic(xs, ys, k);
    }
  mean /= 6.0;
  worst = std::max(worst, std::abs(rdsm::c_k_hat(X, Y, hc, k) - mean));
  std::ostringstream d;
  d << "max deviation " << worst << " (tol 1e-12)";
  return {worst <= 1e-12, false, d.str()};
}

Outcome criterion8_independence_curves() {
  Kernel k;
  const int ns = 20, T = 20, points = 16;
  std::vector<double> phis;
  for (int i = 0; i < points; ++i)
    phis.push_back(std::numbers::pi / 4.0 * i / (points - 1));

  std::vector<double> shift_acc(points, 0.0), ck_acc(points, 0.0),
      lm_acc(points, 0.0);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    rdsm::LogisticRotationSpec xs;  // 0.3 e^{2 pi i / 3}
    xs.x0 = {10.0, 0.0};            // runner default: large X transient
    rdsm::LogisticRotationSpec ys;
    ys.alpha_mod = 0.9;
    ys.theta = 0.25;
    ys.x0 = {-0.9, 0.0};  // runner default: opposite-phase Y start
    const auto X = rdsm::simulate_logistic_rotation(
        xs, ns, T + 1, rdsm::rng::counter_hash(seed, 0, 0, 0x0601));
    const auto Y = rdsm::simulate_logistic_rotation(
        ys, ns, T + 1, rdsm::rng::counter_hash(seed, 1, 0, 0x0601));
    rdsm::HsicConfig hc;        // head 10, tail 15
    MetricConfig mc;
    mc.kernel.gamma = 0.01;  // runner default: wide kernel for the metric
    for (int i = 0; i < points; ++i) {
      const auto [xp, yp] = rdsm::mix_ensembles(X, Y, phis[static_cast<std::size_t>(i)]);
      shift_acc[static_cast<std::size_t>(i)] += rdsm::shift_hsic(xp, yp, hc, k);
      ck_acc[static_cast<std::size_t>(i)] += rdsm::c_k_hat(xp, yp, hc, k);
      lm_acc[static_cast<std::size_t>(i)] += 1.0 - rdsm::metric_L(xp, yp, mc).L;
    }
  }
  const auto sn = rdsm::minmax_normalize(shift_acc);
  const auto cn = rdsm::minmax_normalize(ck_acc);
  const auto ln = rdsm::minmax_normalize(lm_acc);

  const double rho_shift = spearman_rho(phis, sn);
  const double rho_ck = spearman_rho(phis, cn);
  const auto peak =
      static_cast<std::size_t>(std::max_element(ln.begin(), ln.end()) - ln.begin());
  const double phi_star = phis[peak];

  std::ostringstream d;
  d << "spearman rho: shift " << rho_shift << ", c_k " << rho_ck
    << "; 1-L peak at phi " << phi_star;
  const bool ok = rho_shift >= 0.9 && rho_ck >= 0.9 && phi_star >= 0.2 &&
                  phi_star <= 0.6;
  return {ok, false, d.str()};
}

Outcome criterion9_bme_clustering() {
  fs::path bme;
  if (const char* env = std::getenv("RDSM_BME_TEST")) bme = env;
  for (const char* cand :
       {"data/BME_TEST.tsv", "data/BME/BME_TEST.tsv", "BME_TEST.tsv"})
    if (bme.empty() && fs::exists(cand)) bme = cand;
  if (bme.empty() || !fs::exists(bme))
    return {true, true,
            "BME TEST file not found (set RDSM_BME_TEST to enable)"};

  const auto set = rdsm::load_ucr(bme);
  const auto groups = rdsm::make_ensemble_groups(set, 50, 5, 7);
  std::vector<PathEnsemble> es;
  std::vector<std::string> labels;
  std::vector<std::string> cls;
  for (const auto& g : groups)
    for (std::size_t e = 0; e < g.ensembles.size(); ++e) {
      es.push_back(g.ensembles[e]);
      labels.push_back(g.class_label + "#" + std::to_string(e));
      cls.push_back(g.class_label);
    }
  MetricConfig cfg;
  const auto dm = rdsm::distance_matrix(es, cfg, labels);
  const int n = static_cast<int>(es.size());

  // within-class mean < between-class mean, per class
  for (const auto& g : groups) {
    double win = 0.0, wb = 0.0;
    int nw = 0, nb = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        if (cls[static_cast<std::size_t>(i)] != g.class_label) continue;
        if (cls[static_cast<std::size_t>(j)] == g.class_label) {
          win += dm.values(i, j);
          ++nw;
        } else {
          wb += dm.values(i, j);
          ++nb;
        }
      }
    if (win / nw >= wb / nb)
      return {false, false, "class '" + g.class_label + "' not separated"};
  }

  int correct = 0;
  for (int i = 0; i < n; ++i) {
    int best = -1;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      if (best < 0 || dm.values(i, j) < dm.values(i, best)) best = j;
    }
    if (cls[static_cast<std::size_t>(i)] == cls[static_cast<std::size_t>(best)])
      ++correct;
  }
  const double acc = static_cast<double>(correct) / n;
  std::ostringstream d;
  d << "classes separated; 1-NN accuracy " << acc;
  return {acc >= 0.9, false, d.str()};
}

Outcome criterion10_det_properties() {
  std::mt19937 gen(271828);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  for (int rep = 0; rep < 10000; ++rep) {
    const int m = 2 + static_cast<int>(gen() % 5);
    Eigen::MatrixXcd a(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) a(i, j) = cdouble{u(gen), u(gen)};
    const int r1 = static_cast<int>(gen() % m);
    int r2 = static_cast<int>(gen() % m);
    if (r2 == r1) r2 = (r2 + 1) % m;

    const cdouble d0 = rdsm::det_small(a);
    Eigen::MatrixXcd sw = a;
    sw.row(r1).swap(sw.row(r2));
    worst = std::max(worst,
                     std::abs(rdsm::det_small(sw) + d0) / (1.0 + std::abs(d0)));

    Eigen::MatrixXcd dg = a;
    dg.row(r1) = dg.row(r2);
    worst = std::max(worst, std::abs(rdsm::det_small(dg)));
  }
  std::ostringstream d;
  d << "max deviation " << worst << " over 2x10^4 checks (tol 1e-12)";
  return {worst <= 1e-12, false, d.str()};
}

Outcome criterion11_determinism() {
  const fs::path base = fs::temp_directory_path() / "rdsm_acceptance_det";
  fs::remove_all(base);
  const auto cfg = rdsm::Config::from_string(
      "seed = 11\n"
      "panels = 0.1:3\n"
      "variants = L1\n"
      "T = 12\n",
      "acceptance");
  const auto cfg_curve = rdsm::Config::from_string(
      "seed = 4\n"
      "n_s = 4\n"
      "T = 8\n"
      "head = 2\n"
      "tail = 4\n"
      "phi_points = 5\n",
      "acceptance");

  auto run_all = [&](const fs::path& dir, int threads) {
    rdsm::RunOptions opts;
    opts.out_dir = dir;
    opts.threads = threads;
    rdsm::run_rotation_grid(cfg, opts);
    rdsm::run_independence_curve(cfg_curve, opts);
  };
  run_all(base / "a", 1);
  run_all(base / "b", 1);
  run_all(base / "c", 8);

  auto read_all = [](const fs::path& dir) {
    std::vector<std::pair<std::string, std::string>> files;
    for (const auto& entry : fs::recursive_directory_iterator(dir)) {
      if (!entry.is_regular_file()) continue;
      std::ifstream in(entry.path(), std::ios::binary);
      std::string body((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
      files.emplace_back(entry.path().filename().string(), std::move(body));
    }
    std::sort(files.begin(), files.end());
    return files;
  };
  const auto a = read_all(base / "a");
  const auto b = read_all(base / "b");
  const auto c = read_all(base / "c");
  fs::remove_all(base);
  if (a.empty()) return {false, false, "no output files produced"};
  if (a != b) return {false, false, "rerun outputs differ"};
  if (a != c) return {false, false, "1-thread vs 8-thread outputs differ"};
  std::ostringstream d;
  d << a.size() << " output files byte-identical across reruns and 1 vs 8 workers";
  return {true, false, d.str()};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1 && std::string(argv[1]) == "--write-golden") {
    write_golden();
    return 0;
  }

  struct Entry {
    int id;
    const char* name;
    Outcome (*fn)();
  };
  const Entry entries[] = {
      {1, "oracle equivalence of the estimators", criterion1_oracle_equivalence},
      {2, "order-1 reduction to the triple mean", criterion2_kmmd_reduction},
      {3, "positive semidefinite raw Gram over the rotation grid", criterion3_gram_psd},
      {4, "self-normalization and zero diagonal", criterion4_self_normalization},
      {5, "deterministic grid pattern vs frozen oracle matrix", criterion5_deterministic_grid},
      {6, "noise averaging improves with sample count", criterion6_sample_count_improvement},
      {7, "HSIC matrix-product and integration identities", criterion7_hsic_identities},
      {8, "independence curve monotonicity and interior peak", criterion8_independence_curves},
      {9, "BME clustering proxy", criterion9_bme_clustering},
      {10, "determinant antisymmetry and degeneracy", criterion10_det_properties},
      {11, "byte-identical outputs across reruns and worker counts", criterion11_determinism},
  };

  int failures = 0;
  for (const auto& e : entries) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome r;
    try {
      r = e.fn();
    } catch (const std::exception& ex) {
      r = {false, false, std::string("exception: ") + ex.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    const char* status = r.skipped ? "SKIP" : (r.pass ? "PASS" : "FAIL");
    std::cout << status << " criterion " << e.id << " (" << e.name << "): "
              << r.detail << " [" << std::fixed << secs << "s]\n";
    std::cout.unsetf(std::ios::fixed);
    if (!r.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
