#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>

#include "rdsm/ensemble.hpp"

// Seeded generators for the synthetic random dynamical systems and the
// orthogonal mixing transform used in the independence experiments.
//
// All generators are pure functions of (spec, n_paths, t_len, seed); the
// noise at (path p, step t) is a counter-based function of (seed, p, t),
// so paths consume disjoint random streams by construction.

namespace rdsm {

// z_{t+1} = alpha * z_t + eps_t,  alpha = alpha_mod * e^{2 pi i theta},
// eps_t ~ CN(0, sigma^2) i.i.d.
struct RotationSpec {
  double alpha_mod = 1.0;  // |alpha| in [0, 1]
  double theta = 0.25;     // rotation fraction of a full turn
  double sigma = 0.0;      // noise std dev (total complex variance sigma^2)
  cdouble z0 = {0.9, 0.0};
};

// x_{t+1} = alpha * x_t * (1 - c * x_t) + eps_t
struct LogisticRotationSpec {
  double alpha_mod = 0.3;
  double theta = 1.0 / 3.0;
  double sigma = 0.1;
  double c = 0.01;
  cdouble x0 = {0.9, 0.0};
};

// x_{t+1} = A x_t + v_t,  v_t ~ N(0, Sigma) i.i.d., real states embedded
// as complex with zero imaginary parts.
struct ArSpec {
  Eigen::MatrixXd A;
  Eigen::MatrixXd Sigma;
  Eigen::VectorXd x0;
};

PathEnsemble simulate_rotation(const RotationSpec& spec, int n_paths, int t_len,
                               std::uint64_t seed);
PathEnsemble simulate_logistic_rotation(const LogisticRotationSpec& spec,
                                        int n_paths, int t_len,
                                        std::uint64_t seed);
PathEnsemble simulate_ar(const ArSpec& spec, int n_paths, int t_len,
                         std::uint64_t seed);

// X_phi = X cos(phi) + Y sin(phi), Y_phi = -X sin(phi) + Y cos(phi),
// elementwise with paths paired by index.
std::pair<PathEnsemble, PathEnsemble> mix_ensembles(const PathEnsemble& X,
                                                    const PathEnsemble& Y,
                                                    double phi);

// i.i.d. CN(0, sigma^2) draws.
std::vector<cdouble> sample_complex_normal(double sigma, int count,
                                           std::uint64_t seed);

}  // namespace rdsm
