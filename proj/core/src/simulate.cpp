#include "rdsm/simulate.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <numbers>
#include <sstream>

#include "rdsm/errors.hpp"
#include "rdsm/rng.hpp"

namespace rdsm {

namespace {

cdouble phase_coefficient(double mod, double theta) {
  const double ang = 2.0 * std::numbers::pi * theta;
  return {mod * std::cos(ang), mod * std::sin(ang)};
}

}  // namespace

PathEnsemble simulate_rotation(const RotationSpec& spec, int n_paths, int t_len,
                               std::uint64_t seed) {
  if (spec.alpha_mod < 0.0 || spec.alpha_mod > 1.0)
    throw ConfigError("RotationSpec: |alpha| must lie in [0, 1]");
  if (spec.sigma < 0.0) throw ConfigError("RotationSpec: sigma must be >= 0");
  PathEnsemble e = PathEnsemble::zeros(n_paths, t_len, 1);
  const cdouble alpha = phase_coefficient(spec.alpha_mod, spec.theta);
  for (int p = 0; p < n_paths; ++p) {
    cdouble z = spec.z0;
    e.at(p, 0, 0) = z;
    for (int t = 1; t < t_len; ++t) {
      z = alpha * z + rng::complex_normal(seed, p, t, spec.sigma);
      e.at(p, t, 0) = z;
    }
  }
  std::ostringstream meta;
  meta << "rotation alpha_mod=" << spec.alpha_mod << " theta=" << spec.theta
       << " sigma=" << spec.sigma << " z0=" << spec.z0.real() << "+"
       << spec.z0.imag() << "i n_paths=" << n_paths << " t_len=" << t_len
       << " seed=" << seed;
  e.meta = meta.str();
  return e;
}

PathEnsemble simulate_logistic_rotation(const LogisticRotationSpec& spec,
                                        int n_paths, int t_len,
                                        std::uint64_t seed) {
  if (spec.alpha_mod < 0.0 || spec.alpha_mod > 1.0)
    throw ConfigError("LogisticRotationSpec: |alpha| must lie in [0, 1]");
  if (spec.sigma < 0.0 || spec.c < 0.0)
    throw ConfigError("LogisticRotationSpec: sigma and c must be >= 0");
  PathEnsemble e = PathEnsemble::zeros(n_paths, t_len, 1);
  const cdouble alpha = phase_coefficient(spec.alpha_mod, spec.theta);
  for (int p = 0; p < n_paths; ++p) {
    cdouble x = spec.x0;
    e.at(p, 0, 0) = x;
    for (int t = 1; t < t_len; ++t) {
      x = alpha * x * (1.0 - spec.c * x) + rng::complex_normal(seed, p, t, spec.sigma);
      e.at(p, t, 0) = x;
    }
  }
  std::ostringstream meta;
  meta << "logistic_rotation alpha_mod=" << spec.alpha_mod
       << " theta=" << spec.theta << " sigma=" << spec.sigma << " c=" << spec.c
       << " x0=" << spec.x0.real() << "+" << spec.x0.imag()
       << "i n_paths=" << n_paths << " t_len=" << t_len << " seed=" << seed;
  e.meta = meta.str();
  return e;
}

PathEnsemble simulate_ar(const ArSpec& spec, int n_paths, int t_len,
                         std::uint64_t seed) {
  const auto d = spec.A.rows();
  if (d < 1 || spec.A.cols() != d)
    throw ConfigError("ArSpec: A must be square and non-empty");
  if (spec.Sigma.rows() != d || spec.Sigma.cols() != d || spec.x0.size() != d)
    throw ConfigError("ArSpec: Sigma and x0 must match the dimension of A");
  if (!spec.Sigma.isApprox(spec.Sigma.transpose(), 1e-12))
    throw ConfigError("ArSpec: Sigma must be symmetric");
  Eigen::LLT<Eigen::MatrixXd> llt(spec.Sigma);
  Eigen::MatrixXd chol;
  if (llt.info() == Eigen::Success) {
    chol = llt.matrixL();
  } else {
    // PSD but singular covariances are allowed; fall back to an
    // eigenvalue square root and reject genuinely indefinite input.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(spec.Sigma);
    const double maxev = es.eigenvalues().cwiseAbs().maxCoeff();
    if ((es.eigenvalues().array() < -1e-12 * std::max(maxev, 1.0)).any())
      throw ConfigError("ArSpec: Sigma is not positive semidefinite");
    chol = es.eigenvectors() *
           es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();
  }
  PathEnsemble e = PathEnsemble::zeros(n_paths, t_len, static_cast<int>(d));
  const bool noiseless = spec.Sigma.isZero(0.0);
  Eigen::VectorXd z(d);
  for (int p = 0; p < n_paths; ++p) {
    Eigen::VectorXd x = spec.x0;
    for (int c = 0; c < d; ++c) e.at(p, 0, c) = {x(c), 0.0};
    for (int t = 1; t < t_len; ++t) {
      x = spec.A * x;
      if (!noiseless) {
        for (int c = 0; c < d; ++c)
          z(c) = rng::standard_normal(seed, p, t, static_cast<std::uint64_t>(c));
        x += chol * z;
      }
      for (int c = 0; c < d; ++c) e.at(p, t, c) = {x(c), 0.0};
    }
  }
  std::ostringstream meta;
  meta << "ar d=" << d << " n_paths=" << n_paths << " t_len=" << t_len
       << " seed=" << seed;
  e.meta = meta.str();
  return e;
}

std::pair<PathEnsemble, PathEnsemble> mix_ensembles(const PathEnsemble& X,
                                                    const PathEnsemble& Y,
                                                    double phi) {
  if (X.n_paths != Y.n_paths || X.t_len != Y.t_len || X.dim != Y.dim)
    throw ConfigError("mix_ensembles: shape mismatch");
  PathEnsemble Xp = X;
  PathEnsemble Yp = Y;
  const double c = std::cos(phi), s = std::sin(phi);
  for (std::size_t i = 0; i < X.values.size(); ++i) {
    Xp.values[i] = X.values[i] * c + Y.values[i] * s;
    Yp.values[i] = -X.values[i] * s + Y.values[i] * c;
  }
  std::ostringstream mx, my;
  mx << "mix phi=" << phi << " of {" << X.meta << "} {" << Y.meta << "}";
  my << "mix phi=" << phi << " (orthogonal complement) of {" << X.meta << "} {"
     << Y.meta << "}";
  Xp.meta = mx.str();
  Yp.meta = my.str();
  return {std::move(Xp), std::move(Yp)};
}

std::vector<cdouble> sample_complex_normal(double sigma, int count,
                                           std::uint64_t seed) {
  if (sigma < 0.0) throw ConfigError("sample_complex_normal: sigma must be >= 0");
  std::vector<cdouble> out(static_cast<std::size_t>(std::max(count, 0)));
  for (int i = 0; i < count; ++i)
    out[static_cast<std::size_t>(i)] =
        rng::complex_normal(seed, 0, static_cast<std::uint64_t>(i), sigma);
  return out;
}

}  // namespace rdsm
