#pragma once

#include <vector>

#include "rdsm/ensemble.hpp"
#include "rdsm/kernel.hpp"

// HSIC estimator, per-time centered Gram matrices, the integrated
// independence criterion over two time-sample sets, and the shift-HSIC
// baseline used in the mixed-series experiment.

namespace rdsm {

struct HsicConfig {
  std::vector<int> S1;  // time samples for the first system
  std::vector<int> S2;  // time samples for the second system
  int head = 10;        // shift window for shift-HSIC
  int tail = 15;
};

struct CenteredGram {
  int t = 0;
  Eigen::MatrixXd matrix;  // double-centered Gram; rows/cols sum to zero
};

// Biased HSIC estimate tr(HKH * HLH) / (n-1)^2 over paired samples.
double hsic(const std::vector<StatePoint>& xs, const std::vector<StatePoint>& ys,
            const Kernel& kernel);

// G(t)_{pq} = k(Z_t^(p), Z_t^(q)) - row mean - column mean + grand mean.
CenteredGram centered_gram_at_time(const PathEnsemble& ensemble, int t,
                                   const Kernel& kernel);

// Mean over (s, t) in S1 x S2 of tr(G1(s) G2(t)) / (n-1)^2; paths are
// paired by index. Empty S1/S2 default to the full grid 1..T.
double c_k_hat(const PathEnsemble& e1, const PathEnsemble& e2,
               const HsicConfig& cfg, const Kernel& kernel);

// Mean over all ordered path pairs and circular shifts s in [head, tail] of
// the HSIC between {X[i][t]} and {Y[j][(t+s) mod T]} over the time window.
double shift_hsic(const PathEnsemble& X, const PathEnsemble& Y,
                  const HsicConfig& cfg, const Kernel& kernel);

// (v - min) / (max - min); a constant curve maps to all zeros.
std::vector<double> minmax_normalize(const std::vector<double>& curve);

}  // namespace rdsm
