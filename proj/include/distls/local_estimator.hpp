#pragma once

#include <optional>

#include "distls/linalg.hpp"
#include "distls/model_gen.hpp"

namespace distls {

/// Sufficient statistics and estimates held by one agent.
///
/// alpha = sum y x^T (l x n), beta = sum x x^T (n x n). Once beta is
/// numerically invertible its inverse is kept up to date with
/// Sherman-Morrison rank-one updates and refreshed by direct inversion every
/// kRefreshInterval ingests.
struct AgentState {
  static constexpr long kRefreshInterval = 10000;

  Matrix alpha;
  Matrix beta;
  std::optional<Matrix> beta_inv;
  Matrix theta_local;
  Matrix theta_comm;
  long sample_count = 0;

  int n() const { return static_cast<int>(beta.rows()); }
  int l() const { return static_cast<int>(alpha.rows()); }
  bool pre_invertible() const { return !beta_inv.has_value(); }
};

AgentState init_agent(int n, int l);

/// Rank-one update of the statistics with one (x, y) pair. Throws
/// std::invalid_argument on a dimension mismatch.
void ingest(AgentState& state, const Vector& x, const Vector& y);
inline void ingest(AgentState& state, const DataPair& pair) { ingest(state, pair.x, pair.y); }

/// alpha * pinv(beta), recomputed from the statistics.
Matrix local_estimate(const AgentState& state);

}  // namespace distls
