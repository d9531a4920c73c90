#include "rdsm/metric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rdsm/errors.hpp"
#include "rdsm/rng.hpp"

namespace rdsm {

namespace {

cdouble pairwise_sum_range(const cdouble* v, std::size_t n) {
  if (n <= 8) {
    cdouble s{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise_sum_range(v, h) + pairwise_sum_range(v + h, n - h);
}

std::vector<int> resolve_time_indices(const MetricConfig& cfg, int t_len) {
  std::vector<int> tau = cfg.time_indices;
  if (tau.empty()) {
    if (t_len < 2)
      throw ConfigError("time_indices empty and ensemble has no step past t=0");
    for (int t = 1; t < t_len; ++t) tau.push_back(t);
    return tau;
  }
  for (std::size_t i = 0; i < tau.size(); ++i) {
    if (tau[i] < 0 || tau[i] >= t_len)
      throw ConfigError("time index " + std::to_string(tau[i]) +
                        " out of range [0, " + std::to_string(t_len) + ")");
    if (i > 0 && tau[i] <= tau[i - 1])
      throw ConfigError("time_indices must be strictly increasing");
  }
  return tau;
}

std::uint64_t ipow(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

void decode_digits(std::uint64_t x, std::uint64_t base, int m, int* out) {
  for (int p = 0; p < m; ++p) {
    out[p] = static_cast<int>(x % base);
    x /= base;
  }
}

// Kernel lookups between (time-index, path) slots of the two ensembles.
// For m >= 2 the cross-time Gram table is materialized when it fits.
struct EvalContext {
  const PathEnsemble& e1;
  const PathEnsemble& e2;
  Kernel kernel;
  std::vector<int> tau;
  bool use_table = false;
  Eigen::MatrixXcd table;

  EvalContext(const PathEnsemble& a, const PathEnsemble& b,
              const MetricConfig& cfg)
      : e1(a), e2(b), kernel(cfg.kernel) {
    if (a.dim != b.dim)
      throw ConfigError("estimate: ensembles have different state dimensions");
    tau = resolve_time_indices(cfg, std::min(a.t_len, b.t_len));
    const std::size_t rows = tau.size() * static_cast<std::size_t>(a.n_paths);
    const std::size_t cols = tau.size() * static_cast<std::size_t>(b.n_paths);
    if (cfg.m >= 2 && rows * cols <= (std::size_t{1} << 23)) {
      table.resize(static_cast<Eigen::Index>(rows),
                   static_cast<Eigen::Index>(cols));
      for (std::size_t i = 0; i < tau.size(); ++i)
        for (int p = 0; p < a.n_paths; ++p)
          for (std::size_t j = 0; j < tau.size(); ++j)
            for (int q = 0; q < b.n_paths; ++q)
              table(static_cast<Eigen::Index>(i * a.n_paths + p),
                    static_cast<Eigen::Index>(j * b.n_paths + q)) =
                  eval_kernel(kernel, a.state(p, tau[i]), b.state(q, tau[j]));
      use_table = true;
    }
  }

  cdouble k(int ti_row, int path_row, int ti_col, int path_col) const {
    if (use_table)
      return table(
          static_cast<Eigen::Index>(ti_row * e1.n_paths + path_row),
          static_cast<Eigen::Index>(ti_col * e2.n_paths + path_col));
    return eval_kernel(kernel, e1.state(path_row, tau[ti_row]),
                       e2.state(path_col, tau[ti_col]));
  }
};

// det( k(E1[w_p][t_p], E2[h_q][t_q]) )_{p,q} for one time tuple and one
// pair of path tuples.
cdouble tuple_det(const EvalContext& ctx, int m, const int* ti, const int* w,
                  const int* h, Eigen::MatrixXcd& scratch) {
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < m; ++q)
      scratch(p, q) = ctx.k(ti[p], w[p], ti[q], h[q]);
  return det_small(scratch);
}

bool next_odometer(std::vector<int>& idx, int base) {
  for (std::size_t p = 0; p < idx.size(); ++p) {
    if (++idx[p] < base) return true;
    idx[p] = 0;
  }
  return false;
}

// Exact enumeration over a shared time tuple and independent path tuples.
// Path-tuple pairs are visited as unordered groups {(u,v), (v,u)} so that
// swapping the two ensembles permutes additions only within a group, which
// keeps estimate_l(E1,E2) and estimate_l(E2,E1) bit-identical for m <= 2.
cdouble exact_independent(const EvalContext& ctx, const MetricConfig& cfg) {
  const int m = cfg.m;
  const std::uint64_t n_time = ipow(ctx.tau.size(), m);
  const std::uint64_t a_count = ipow(static_cast<std::uint64_t>(ctx.e1.n_paths), m);
  const std::uint64_t b_count = ipow(static_cast<std::uint64_t>(ctx.e2.n_paths), m);
  const double cost = static_cast<double>(n_time) * static_cast<double>(a_count) *
                      static_cast<double>(b_count);
  if (cost > cfg.cost_ceiling)
    throw ConfigError("exact enumeration cost " + std::to_string(cost) +
                      " exceeds ceiling; switch to monte_carlo");
  const std::uint64_t k_max = std::max(a_count, b_count);
  std::vector<int> ti(static_cast<std::size_t>(m), 0);
  std::vector<int> w(static_cast<std::size_t>(m)), h(static_cast<std::size_t>(m));
  Eigen::MatrixXcd scratch(m, m);
  std::vector<cdouble> groups;
  std::vector<cdouble> per_time;
  per_time.reserve(n_time);
  do {
    groups.clear();
    for (std::uint64_t u = 0; u < k_max; ++u) {
      for (std::uint64_t v = u; v < k_max; ++v) {
        cdouble g{0.0, 0.0};
        bool any = false;
        if (u < a_count && v < b_count) {
          decode_digits(u, static_cast<std::uint64_t>(ctx.e1.n_paths), m, w.data());
          decode_digits(v, static_cast<std::uint64_t>(ctx.e2.n_paths), m, h.data());
          g = tuple_det(ctx, m, ti.data(), w.data(), h.data(), scratch);
          any = true;
        }
        if (u != v && v < a_count && u < b_count) {
          decode_digits(v, static_cast<std::uint64_t>(ctx.e1.n_paths), m, w.data());
          decode_digits(u, static_cast<std::uint64_t>(ctx.e2.n_paths), m, h.data());
          const cdouble g2 =
              tuple_det(ctx, m, ti.data(), w.data(), h.data(), scratch);
          g = any ? g + g2 : g2;
          any = true;
        }
        if (any) groups.push_back(g);
      }
    }
    per_time.push_back(pairwise_sum(groups));
  } while (next_odometer(ti, static_cast<int>(ctx.tau.size())));
  const cdouble total = pairwise_sum(per_time);
  return total / (static_cast<double>(n_time) * static_cast<double>(a_count) *
                  static_cast<double>(b_count));
}

cdouble exact_shared(const EvalContext& ctx, const MetricConfig& cfg) {
  if (ctx.e1.n_paths != ctx.e2.n_paths)
    throw ConfigError("shared-omega estimator requires equal path counts");
  const int m = cfg.m;
  const std::uint64_t n_time = ipow(ctx.tau.size(), m);
  const std::uint64_t a_count = ipow(static_cast<std::uint64_t>(ctx.e1.n_paths), m);
  const double cost = static_cast<double>(n_time) * static_cast<double>(a_count);
  if (cost > cfg.cost_ceiling)
    throw ConfigError("exact enumeration cost " + std::to_string(cost) +
                      " exceeds ceiling; switch to monte_carlo");
  std::vector<int> ti(static_cast<std::size_t>(m), 0);
  std::vector<int> w(static_cast<std::size_t>(m));
  Eigen::MatrixXcd scratch(m, m);
  std::vector<cdouble> terms;
  std::vector<cdouble> per_time;
  per_time.reserve(n_time);
  do {
    terms.clear();
    for (std::uint64_t u = 0; u < a_count; ++u) {
      decode_digits(u, static_cast<std::uint64_t>(ctx.e1.n_paths), m, w.data());
      terms.push_back(tuple_det(ctx, m, ti.data(), w.data(), w.data(), scratch));
    }
    per_time.push_back(pairwise_sum(terms));
  } while (next_odometer(ti, static_cast<int>(ctx.tau.size())));
  const cdouble total = pairwise_sum(per_time);
  return total / (static_cast<double>(n_time) * static_cast<double>(a_count));
}

cdouble monte_carlo(const EvalContext& ctx, const MetricConfig& cfg, bool shared) {
  if (shared && ctx.e1.n_paths != ctx.e2.n_paths)
    throw ConfigError("shared-omega estimator requires equal path counts");
  const int m = cfg.m;
  if (cfg.mc_budget == 0) throw ConfigError("monte_carlo budget must be > 0");
  std::vector<int> ti(static_cast<std::size_t>(m)), w(static_cast<std::size_t>(m)),
      h(static_cast<std::size_t>(m));
  Eigen::MatrixXcd scratch(m, m);
  std::vector<cdouble> chunk;
  chunk.reserve(4096);
  std::vector<cdouble> chunk_sums;
  for (std::uint64_t i = 0; i < cfg.mc_budget; ++i) {
    for (int p = 0; p < m; ++p) {
      ti[static_cast<std::size_t>(p)] = static_cast<int>(rng::counter_hash(
          cfg.mc_seed, i, 0x10 + static_cast<std::uint64_t>(p), 0) %
          ctx.tau.size());
      w[static_cast<std::size_t>(p)] = static_cast<int>(rng::counter_hash(
          cfg.mc_seed, i, 0x20 + static_cast<std::uint64_t>(p), 1) %
          static_cast<std::uint64_t>(ctx.e1.n_paths));
      h[static_cast<std::size_t>(p)] = shared
          ? w[static_cast<std::size_t>(p)]
          : static_cast<int>(rng::counter_hash(
                cfg.mc_seed, i, 0x30 + static_cast<std::uint64_t>(p), 2) %
                static_cast<std::uint64_t>(ctx.e2.n_paths));
    }
    chunk.push_back(tuple_det(ctx, m, ti.data(), w.data(), h.data(), scratch));
    if (chunk.size() == 4096) {
      chunk_sums.push_back(pairwise_sum(chunk));
      chunk.clear();
    }
  }
  if (!chunk.empty()) chunk_sums.push_back(pairwise_sum(chunk));
  return pairwise_sum(chunk_sums) / static_cast<double>(cfg.mc_budget);
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

cdouble pairwise_sum(std::vector<cdouble>& terms) {
  if (terms.empty()) return {0.0, 0.0};
  return pairwise_sum_range(terms.data(), terms.size());
}

cdouble estimate_l(const PathEnsemble& e1, const PathEnsemble& e2,
                   const MetricConfig& cfg) {
  if (cfg.m < 1) throw ConfigError("order m must be >= 1");
  EvalContext ctx(e1, e2, cfg);
  return cfg.enumeration == EnumerationMode::Exact
             ? exact_independent(ctx, cfg)
             : monte_carlo(ctx, cfg, /*shared=*/false);
}

cdouble estimate_l_tilde(const PathEnsemble& e1, const PathEnsemble& e2,
                         const MetricConfig& cfg) {
  if (cfg.m < 1) throw ConfigError("order m must be >= 1");
  EvalContext ctx(e1, e2, cfg);
  return cfg.enumeration == EnumerationMode::Exact
             ? exact_shared(ctx, cfg)
             : monte_carlo(ctx, cfg, /*shared=*/true);
}

double normalize(cdouble l12, cdouble l11, cdouble l22,
                 const EpsilonPolicy& policy) {
  const double scale = std::max({1.0, std::abs(l11), std::abs(l22)});
  if (std::abs(l11.imag()) > 1e-9 * scale || std::abs(l22.imag()) > 1e-9 * scale)
    throw ConfigError("normalize: self-estimates are not real within tolerance");
  if (!policy.limit_exact) {
    const double denom =
        std::abs(l11 + policy.epsilon) * std::abs(l22 + policy.epsilon);
    const double num = std::norm(l12 + policy.epsilon);
    return denom == 0.0 ? 1.0 : num / denom;
  }
  double a11 = l11.real();
  double a22 = l22.real();
  if (a11 < -1e-9 || a22 < -1e-9)
    throw ConfigError("normalize: negative self-estimate beyond tolerance");
  a11 = std::max(a11, 0.0);
  a22 = std::max(a22, 0.0);
  constexpr double kDelta = 1e-12;
  const bool z1 = a11 <= kDelta;
  const bool z2 = a22 <= kDelta;
  if (z1 && z2) return 1.0;   // eps^2 / eps^2
  if (z1 || z2) return 0.0;   // |l12| <= sqrt(l11 l22) -> numerator vanishes faster
  return std::norm(l12) / (a11 * a22);
}

MetricValue metric_L(const PathEnsemble& e1, const PathEnsemble& e2,
                     const MetricConfig& cfg) {
  auto estimate = [&cfg](const PathEnsemble& a, const PathEnsemble& b) {
    return cfg.variant == MetricVariant::SharedOmega ? estimate_l_tilde(a, b, cfg)
                                                     : estimate_l(a, b, cfg);
  };
  MetricValue v;
  v.variant = cfg.variant;
  v.l12 = estimate(e1, e2);
  v.l11 = estimate(e1, e1);
  v.l22 = estimate(e2, e2);
  v.L = normalize(v.l12, v.l11, v.l22, cfg.epsilon);
  return v;
}

MetricValue deterministic_metric_A(const PathEnsemble& path1,
                                   const PathEnsemble& path2,
                                   const MetricConfig& cfg) {
  if (path1.n_paths != 1 || path2.n_paths != 1)
    throw ConfigError("deterministic_metric_A requires singleton ensembles");
  return metric_L(path1, path2, cfg);
}

DistanceMatrix distance_matrix(const std::vector<PathEnsemble>& ensembles,
                               const MetricConfig& cfg,
                               std::vector<std::string> labels) {
  if (ensembles.empty()) throw ConfigError("distance_matrix: empty ensemble list");
  const int n = static_cast<int>(ensembles.size());
  for (const auto& e : ensembles) {
    if (e.dim != ensembles.front().dim)
      throw ConfigError("distance_matrix: mixed state dimensions");
    if (cfg.variant == MetricVariant::SharedOmega &&
        e.n_paths != ensembles.front().n_paths)
      throw ConfigError("distance_matrix: shared-omega variant needs uniform n_paths");
  }
  if (labels.empty())
    for (int i = 0; i < n; ++i) labels.push_back("E" + std::to_string(i));
  if (static_cast<int>(labels.size()) != n)
    throw ConfigError("distance_matrix: label count mismatch");

  auto estimate = [&cfg](const PathEnsemble& a, const PathEnsemble& b) {
    return cfg.variant == MetricVariant::SharedOmega ? estimate_l_tilde(a, b, cfg)
                                                     : estimate_l(a, b, cfg);
  };
  std::vector<cdouble> self(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    self[static_cast<std::size_t>(i)] = estimate(ensembles[i], ensembles[i]);

  DistanceMatrix dm;
  dm.labels = std::move(labels);
  dm.values.resize(n, n);
  for (int i = 0; i < n; ++i) {
    dm.values(i, i) = 1.0 - normalize(self[static_cast<std::size_t>(i)],
                                      self[static_cast<std::size_t>(i)],
                                      self[static_cast<std::size_t>(i)],
                                      cfg.epsilon);
    for (int j = i + 1; j < n; ++j) {
      const cdouble l12 = estimate(ensembles[i], ensembles[j]);
      const double d = 1.0 - normalize(l12, self[static_cast<std::size_t>(i)],
                                       self[static_cast<std::size_t>(j)],
                                       cfg.epsilon);
      dm.values(i, j) = d;
      dm.values(j, i) = d;
    }
  }
  return dm;
}

void save_distance_matrix_csv(const DistanceMatrix& dm,
                              const std::filesystem::path& path,
                              const std::string& audit_comment) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open for writing: " + path.string());
  if (!audit_comment.empty()) out << "# " << audit_comment << "\n";
  for (std::size_t i = 0; i < dm.labels.size(); ++i)
    out << (i ? "," : "") << dm.labels[i];
  out << "\n";
  for (Eigen::Index i = 0; i < dm.values.rows(); ++i) {
    for (Eigen::Index j = 0; j < dm.values.cols(); ++j)
      out << (j ? "," : "") << fmt17(dm.values(i, j));
    out << "\n";
  }
  if (!out) throw DataError("write failed: " + path.string());
}

void save_distance_matrix_json(const DistanceMatrix& dm,
                               const std::filesystem::path& path,
                               const std::string& config_description) {
  nlohmann::json j;
  j["labels"] = dm.labels;
  std::vector<std::vector<double>> rows;
  for (Eigen::Index i = 0; i < dm.values.rows(); ++i) {
    std::vector<double> row;
    for (Eigen::Index c = 0; c < dm.values.cols(); ++c)
      row.push_back(dm.values(i, c));
    rows.push_back(std::move(row));
  }
  j["values"] = rows;
  j["config"] = config_description;
  std::ofstream out(path);
  if (!out) throw DataError("cannot open for writing: " + path.string());
  out << j.dump(2) << "\n";
}

DistanceMatrix load_distance_matrix_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open: " + path.string());
  std::string line;
  DistanceMatrix dm;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::string f;
    if (dm.labels.empty()) {
      while (std::getline(ss, f, ',')) dm.labels.push_back(f);
      continue;
    }
    std::vector<double> row;
    while (std::getline(ss, f, ',')) row.push_back(std::stod(f));
    if (row.size() != dm.labels.size())
      throw DataError(path.string() + ": ragged distance matrix row");
    rows.push_back(std::move(row));
  }
  if (rows.size() != dm.labels.size())
    throw DataError(path.string() + ": distance matrix is not square");
  const auto n = static_cast<Eigen::Index>(rows.size());
  dm.values.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      dm.values(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return dm;
}

}  // namespace rdsm
