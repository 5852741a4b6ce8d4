#include "distls/local_estimator.hpp"

#include <stdexcept>
#include <string>

#include "distls/kernels.hpp"

namespace distls {

namespace {

std::span<double> flat(Matrix& m) { return {m.data(), static_cast<std::size_t>(m.size())}; }
std::span<const double> flat(const Vector& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

Matrix direct_inverse(const Matrix& beta) {
  return beta.ldlt().solve(Matrix::Identity(beta.rows(), beta.cols()));
}

}  // namespace

AgentState init_agent(int n, int l) {
  if (n < 1 || l < 1) throw std::invalid_argument("init_agent: n and l must be >= 1");
  AgentState s;
  s.alpha = Matrix::Zero(l, n);
  s.beta = Matrix::Zero(n, n);
  s.theta_local = Matrix::Zero(l, n);
  s.theta_comm = Matrix::Zero(l, n);
  return s;
}

void ingest(AgentState& state, const Vector& x, const Vector& y) {
  if (x.size() != state.n() || y.size() != state.l()) {
    throw std::invalid_argument("ingest: expected x of length " + std::to_string(state.n()) + " and y of length " +
                                std::to_string(state.l()) + ", got " + std::to_string(x.size()) + " and " +
                                std::to_string(y.size()));
  }
  kernels::rank1_update(1.0, flat(y), flat(x), flat(state.alpha));
  kernels::rank1_update(1.0, flat(x), flat(x), flat(state.beta));
  ++state.sample_count;

  if (state.beta_inv) {
    if (state.sample_count % AgentState::kRefreshInterval == 0) {
      state.beta_inv = direct_inverse(state.beta);
    } else {
      Matrix& inv = *state.beta_inv;
      const Vector bx = inv * x;
      const double denom = 1.0 + x.dot(bx);
      kernels::rank1_update(-1.0 / denom, flat(bx), flat(bx), flat(inv));
    }
  } else if (numerically_invertible(state.beta)) {
    state.beta_inv = direct_inverse(state.beta);
  }

  if (state.beta_inv) {
    state.theta_local.noalias() = state.alpha * *state.beta_inv;
  } else {
    state.theta_local = state.alpha * pseudo_inverse(state.beta);
  }
}

Matrix local_estimate(const AgentState& state) { return state.alpha * pseudo_inverse(state.beta); }

}  // namespace distls
