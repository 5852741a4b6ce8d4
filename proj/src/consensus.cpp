#include "distls/consensus.hpp"

#include <algorithm>
#include <cmath>

#include "distls/kernels.hpp"

namespace distls {

std::string to_string(WeightError e) {
  switch (e) {
    case WeightError::NotSquare:
      return "weight matrix is not square";
    case WeightError::NegativeEntry:
      return "negative weight";
    case WeightError::RowSum:
      return "row does not sum to 1";
    case WeightError::Asymmetric:
      return "weight matrix is not symmetric";
    case WeightError::NoSpectralGap:
      return "rho(W) is not below 1";
  }
  return "invalid weight matrix";
}

WeightMatrix WeightMatrix::validate(const Matrix& w) {
  if (w.rows() != w.cols() || w.rows() == 0) {
    throw WeightValidationError(WeightError::NotSquare,
                                std::to_string(w.rows()) + "x" + std::to_string(w.cols()));
  }
  const Eigen::Index m = w.rows();
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      if (!std::isfinite(w(i, j)) || w(i, j) < 0.0) {
        throw WeightValidationError(WeightError::NegativeEntry,
                                    "entry (" + std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    const double sum = w.row(i).sum();
    if (std::abs(sum - 1.0) > kTolerance) {
      throw WeightValidationError(WeightError::RowSum, "row " + std::to_string(i));
    }
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = i + 1; j < m; ++j) {
      if (std::abs(w(i, j) - w(j, i)) > kTolerance) {
        throw WeightValidationError(WeightError::Asymmetric,
                                    "entries (" + std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }
  if (m == 1) return WeightMatrix(w, 0.0);

  const Matrix sym = 0.5 * (w + w.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sym, Eigen::EigenvaluesOnly);
  const auto& ev = eig.eigenvalues();  // ascending
  const double rho = std::max(ev(m - 2), -ev(0));
  if (rho >= 1.0 - kTolerance) {
    throw WeightValidationError(WeightError::NoSpectralGap, "rho = " + std::to_string(rho));
  }
  return WeightMatrix(w, rho);
}

Matrix ring_topology(int m, double self_weight) {
  if (m < 1) throw std::invalid_argument("ring_topology: m must be >= 1");
  if (!(self_weight >= 0.0 && self_weight <= 1.0)) {
    throw std::invalid_argument("ring_topology: self weight must lie in [0, 1]");
  }
  Matrix w = Matrix::Zero(m, m);
  if (m == 1) {
    w(0, 0) = 1.0;
    return w;
  }
  const double side = (1.0 - self_weight) / 2.0;
  for (int i = 0; i < m; ++i) {
    w(i, i) += self_weight;
    w(i, (i + 1) % m) += side;
    w(i, (i + m - 1) % m) += side;
  }
  return w;
}

Matrix complete_topology(int m) {
  if (m < 1) throw std::invalid_argument("complete_topology: m must be >= 1");
  return Matrix::Constant(m, m, 1.0 / m);
}

namespace {

void mix_once(const Matrix& w, const std::vector<Matrix>& in, std::vector<Matrix>& out,
              std::vector<const double*>& ptrs, std::vector<double>& row) {
  const int m = static_cast<int>(w.rows());
  for (int j = 0; j < m; ++j) ptrs[j] = in[j].data();
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) row[j] = w(i, j);
    kernels::weighted_sum(row, ptrs, {out[i].data(), static_cast<std::size_t>(out[i].size())});
  }
}

void check_uniform(const std::vector<Matrix>& mats, int m, const char* what) {
  if (static_cast<int>(mats.size()) != m) {
    throw std::invalid_argument(std::string("run_comm_phase: expected one ") + what + " per agent");
  }
  for (const auto& a : mats) {
    if (a.rows() != mats.front().rows() || a.cols() != mats.front().cols()) {
      throw std::invalid_argument(std::string("run_comm_phase: ") + what + " dimensions differ across agents");
    }
  }
}

}  // namespace

CommPhaseResult run_comm_phase(const WeightMatrix& weights, const std::vector<Matrix>& alphas,
                               const std::vector<Matrix>& betas, int steps, const CommObserver& observer) {
  if (steps < 1) throw std::invalid_argument("run_comm_phase: T must be >= 1");
  const int m = weights.size();
  check_uniform(alphas, m, "alpha");
  check_uniform(betas, m, "beta");

  CommPhaseResult cur{alphas, betas, 0};
  CommPhaseResult next{alphas, betas, 0};
  std::vector<const double*> ptrs(m);
  std::vector<double> row(m);
  for (int k = 0; k < steps; ++k) {
    mix_once(weights.matrix(), cur.alphas, next.alphas, ptrs, row);
    mix_once(weights.matrix(), cur.betas, next.betas, ptrs, row);
    next.steps = k + 1;
    std::swap(cur, next);
    if (observer) observer(k + 1, cur);
  }
  return cur;
}

double mixing_deficit(const WeightMatrix& weights, int steps) {
  if (steps < 0) throw std::invalid_argument("mixing_deficit: T must be >= 0");
  const int m = weights.size();
  Matrix power = Matrix::Identity(m, m);
  for (int k = 0; k < steps; ++k) power = power * weights.matrix();
  return (power.array() - 1.0 / m).abs().rowwise().sum().maxCoeff();
}

Matrix comm_estimate(const CommPhaseResult& result, int agent) {
  return result.alphas.at(agent) * pseudo_inverse(result.betas.at(agent));
}

}  // namespace distls
