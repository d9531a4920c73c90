#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "rdsm/ensemble.hpp"
#include "rdsm/kernel.hpp"

// Empirical estimators of the determinant-based similarity of two path
// ensembles, its shared-noise variant, the normalized metric L, and
// distance matrices over ensemble collections.

namespace rdsm {

enum class MetricVariant {
  IndependentOmega,  // path tuples drawn independently on both sides
  SharedOmega,       // one path tuple shared via index pairing
};

struct EpsilonPolicy {
  // limit_exact resolves the epsilon -> +0 limit analytically;
  // fixed evaluates the quotient at the given epsilon.
  bool limit_exact = true;
  double epsilon = 0.0;

  static EpsilonPolicy limit() { return {}; }
  static EpsilonPolicy fixed(double eps) { return {false, eps}; }
};

enum class EnumerationMode { Exact, MonteCarlo };

struct MetricConfig {
  Kernel kernel;
  int m = 1;  // exterior-product order
  // Stored time indices entering the uniform time measure; empty means
  // 1..t_len-1 (the initial point excluded).
  std::vector<int> time_indices;
  MetricVariant variant = MetricVariant::IndependentOmega;
  EpsilonPolicy epsilon;
  EnumerationMode enumeration = EnumerationMode::Exact;
  std::uint64_t mc_budget = 100000;
  std::uint64_t mc_seed = 1;
  // Maximum number of determinant evaluations allowed in exact mode.
  double cost_ceiling = 1e8;
};

struct MetricValue {
  cdouble l12{};
  cdouble l11{};
  cdouble l22{};
  double L = 0.0;
  MetricVariant variant = MetricVariant::IndependentOmega;
};

// Average over all m-tuples of time indices, path tuples omega for E1 and
// independently eta for E2, of det( k(E1[omega_p][t_p], E2[eta_q][t_q]) ).
cdouble estimate_l(const PathEnsemble& e1, const PathEnsemble& e2,
                   const MetricConfig& cfg);

// Same with a single path tuple shared by both sides (paths paired by index);
// requires equal path counts.
cdouble estimate_l_tilde(const PathEnsemble& e1, const PathEnsemble& e2,
                         const MetricConfig& cfg);

// The epsilon -> +0 limit of |l12 + eps|^2 / (|l11 + eps| |l22 + eps|).
double normalize(cdouble l12, cdouble l11, cdouble l22,
                 const EpsilonPolicy& policy);

MetricValue metric_L(const PathEnsemble& e1, const PathEnsemble& e2,
                     const MetricConfig& cfg);

// L specialized to singleton ensembles (the deterministic metric).
MetricValue deterministic_metric_A(const PathEnsemble& path1,
                                   const PathEnsemble& path2,
                                   const MetricConfig& cfg);

struct DistanceMatrix {
  std::vector<std::string> labels;
  Eigen::MatrixXd values;  // entries 1 - L, symmetric
};

DistanceMatrix distance_matrix(const std::vector<PathEnsemble>& ensembles,
                               const MetricConfig& cfg,
                               std::vector<std::string> labels = {});

// CSV: optional '# ...' audit line, a header row of labels, then the square
// block at 17 significant digits. JSON: {labels, values, config}.
void save_distance_matrix_csv(const DistanceMatrix& dm,
                              const std::filesystem::path& path,
                              const std::string& audit_comment = {});
void save_distance_matrix_json(const DistanceMatrix& dm,
                               const std::filesystem::path& path,
                               const std::string& config_description = {});
DistanceMatrix load_distance_matrix_csv(const std::filesystem::path& path);

// Deterministic pairwise (tree) summation; the reduction order is fixed by
// the element order alone.
cdouble pairwise_sum(std::vector<cdouble>& terms);

}  // namespace rdsm
