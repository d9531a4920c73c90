#pragma once

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <vector>

// Scalar kernels on complex state vectors, Gram blocks, and small-order
// determinants. The determinant of a Gram block is the inner product of
// wedge products of the contributing kernel sections.

namespace rdsm {

using cdouble = std::complex<double>;
using StatePoint = std::vector<cdouble>;

enum class KernelFamily { Gaussian };

struct Kernel {
  KernelFamily family = KernelFamily::Gaussian;
  double gamma = 0.5;  // inverse squared length-scale; k = exp(-gamma*|z-w|^2)
};

// Throws ConfigError on dimension mismatch or non-finite input,
// and if kernel.gamma <= 0.
cdouble eval_kernel(const Kernel& kernel, std::span<const cdouble> z,
                    std::span<const cdouble> w);

inline cdouble eval_kernel(const Kernel& kernel, const StatePoint& z,
                           const StatePoint& w) {
  return eval_kernel(kernel, std::span<const cdouble>(z),
                     std::span<const cdouble>(w));
}

struct GramBlock {
  Eigen::MatrixXcd entries;
};

GramBlock gram(const Kernel& kernel, const std::vector<StatePoint>& rows,
               const std::vector<StatePoint>& cols);

// Determinant of a square block of order <= 8: exact cofactor expansion up
// to 3x3, partial-pivot elimination beyond.
cdouble det_small(const GramBlock& block);
cdouble det_small(const Eigen::MatrixXcd& entries);

}  // namespace rdsm
