#pragma once

#include <Eigen/Dense>

namespace distls {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Relative singular-value cutoff: a matrix is treated as full rank when
/// sigma_min > kRankTol * sigma_max.
inline constexpr double kRankTol = 1e-8;

/// Largest singular value.
double spectral_norm(const Matrix& a);

/// Moore-Penrose pseudoinverse with singular values below kRankTol * sigma_max
/// treated as zero. The pseudoinverse of a zero matrix is zero.
Matrix pseudo_inverse(const Matrix& a);

bool numerically_invertible(const Matrix& a);

}  // namespace distls
