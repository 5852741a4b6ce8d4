#include "distls/linalg.hpp"

namespace distls {

double spectral_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues()(0);
}

Matrix pseudo_inverse(const Matrix& a) {
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  Matrix out = Matrix::Zero(a.cols(), a.rows());
  if (s.size() == 0 || s(0) == 0.0) return out;
  const double cutoff = kRankTol * s(0);
  Vector inv = Vector::Zero(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > cutoff) inv(i) = 1.0 / s(i);
  }
  out.noalias() = svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
  return out;
}

bool numerically_invertible(const Matrix& a) {
  if (a.rows() != a.cols() || a.size() == 0) return false;
  Eigen::JacobiSVD<Matrix> svd(a);
  const auto& s = svd.singularValues();
  return s(0) > 0.0 && s(s.size() - 1) > kRankTol * s(0);
}

}  // namespace distls
