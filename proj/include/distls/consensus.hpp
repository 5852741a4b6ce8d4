#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "distls/linalg.hpp"

namespace distls {

enum class WeightError {
  NotSquare,
  NegativeEntry,
  RowSum,
  Asymmetric,
  NoSpectralGap,  // rho(W) >= 1, e.g. a disconnected graph
};

std::string to_string(WeightError e);

class WeightValidationError : public std::invalid_argument {
 public:
  WeightValidationError(WeightError clause, const std::string& detail)
      : std::invalid_argument(to_string(clause) + ": " + detail), clause_(clause) {}
  WeightError clause() const { return clause_; }

 private:
  WeightError clause_;
};

/// A symmetric doubly stochastic consensus matrix with its mixing rate
/// rho(W) = max(lambda_2, -lambda_m) over the algebraically sorted spectrum.
class WeightMatrix {
 public:
  static constexpr double kTolerance = 1e-12;

  /// The single-agent matrix [1].
  WeightMatrix() : w_(Matrix::Ones(1, 1)), rho_(0.0) {}

  /// Throws WeightValidationError naming the first violated condition.
  static WeightMatrix validate(const Matrix& w);

  const Matrix& matrix() const { return w_; }
  double rho() const { return rho_; }
  int size() const { return static_cast<int>(w_.rows()); }
  double operator()(int i, int j) const { return w_(i, j); }

 private:
  WeightMatrix(Matrix w, double rho) : w_(std::move(w)), rho_(rho) {}
  Matrix w_;
  double rho_;
};

/// Ring over m agents: self weight s, (1 - s) / 2 to each neighbour.
Matrix ring_topology(int m, double self_weight);

/// Uniform averaging, every entry 1/m.
Matrix complete_topology(int m);

struct CommPhaseResult {
  std::vector<Matrix> alphas;
  std::vector<Matrix> betas;
  int steps = 0;
};

/// Called after each mixing round with the 1-based round index.
using CommObserver = std::function<void(int round, const CommPhaseResult& state)>;

/// T synchronous rounds of alpha_i <- sum_j W(i,j) alpha_j (same for beta).
CommPhaseResult run_comm_phase(const WeightMatrix& weights, const std::vector<Matrix>& alphas,
                               const std::vector<Matrix>& betas, int steps, const CommObserver& observer = {});

/// max_i sum_j |W^T(i,j) - 1/m| from the explicit matrix power.
double mixing_deficit(const WeightMatrix& weights, int steps);

/// alphas[agent] * pinv(betas[agent]).
Matrix comm_estimate(const CommPhaseResult& result, int agent);

}  // namespace distls
