#include "distls/simnet.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

namespace distls {

void SimConfig::validate() const {
  model.validate();
  if (weights.size() != model.m) throw std::invalid_argument("network: weight matrix size must equal model.m");
  if (schedule.zeta < 1) throw std::invalid_argument("schedule.zeta: must be >= 1");
  if (schedule.steps < 1) throw std::invalid_argument("schedule.T: must be >= 1");
  if (schedule.stop_time < 0 || schedule.stop_time % schedule.zeta != 0) {
    throw std::invalid_argument("schedule.S: must be a nonnegative multiple of zeta");
  }
  if (horizon < 1) throw std::invalid_argument("run.horizon: must be >= 1");
  if (horizon < schedule.stop_time) throw std::invalid_argument("run.horizon: must be >= S");
  if (runs < 1) throw std::invalid_argument("run.runs: must be >= 1");
  if (parallel_runs < 1) throw std::invalid_argument("run.parallel_runs: must be >= 1");
}

Network::Network(const SimConfig& config, std::uint64_t run)
    : config_(config), stream_(config.seed), run_(run) {
  agents_.reserve(config.model.m);
  for (int i = 0; i < config.model.m; ++i) agents_.push_back(init_agent(config.model.n, config.model.l));
}

Matrix Network::global_estimate() const {
  Matrix alpha = Matrix::Zero(config_.model.l, config_.model.n);
  Matrix beta = Matrix::Zero(config_.model.n, config_.model.n);
  for (const auto& a : agents_) {
    alpha += a.alpha;
    beta += a.beta;
  }
  return alpha * pseudo_inverse(beta);
}

TraceRow Network::step(long t) {
  if (t != time_ + 1) throw std::logic_error("Network::step: steps must be consecutive");
  time_ = t;
  const int m = config_.model.m;
  for (int i = 0; i < m; ++i) {
    ingest(agents_[i], sample_pair(config_.model, stream_, run_, i, t));
  }

  TraceRow row;
  row.t = t;
  row.comm_fired = config_.schedule.fires_at(t);
  if (row.comm_fired) {
    std::vector<Matrix> alphas;
    std::vector<Matrix> betas;
    alphas.reserve(m);
    betas.reserve(m);
    for (const auto& a : agents_) {
      alphas.push_back(a.alpha);
      betas.push_back(a.beta);
    }
    const CommPhaseResult mixed = run_comm_phase(config_.weights, alphas, betas, config_.schedule.steps, observer_);
    for (int i = 0; i < m; ++i) {
      AgentState& a = agents_[i];
      a.theta_comm = comm_estimate(mixed, i);
      if (config_.writeback_mixed) {
        a.alpha = mixed.alphas[i];
        a.beta = mixed.betas[i];
        a.beta_inv.reset();
        if (numerically_invertible(a.beta)) {
          a.beta_inv = a.beta.ldlt().solve(Matrix::Identity(a.n(), a.n()));
        }
        a.theta_local = local_estimate(a);
      }
    }
  }

  const Matrix& theta = config_.model.theta;
  for (const auto& a : agents_) {
    row.local_err += spectral_norm(a.theta_local - theta);
    row.comm_err += spectral_norm(a.theta_comm - theta);
    if (a.pre_invertible()) ++row.pre_invertible_count;
  }
  row.local_err /= m;
  row.comm_err /= m;
  row.global_err = spectral_norm(global_estimate() - theta);
  return row;
}

ErrorTrace run_single(const SimConfig& config, std::uint64_t run) {
  Network net(config, run);
  ErrorTrace trace;
  trace.reserve(static_cast<std::size_t>(config.horizon));
  for (long t = 1; t <= config.horizon; ++t) trace.push_back(net.step(t));
  return trace;
}

ErrorTrace average_traces(const std::vector<ErrorTrace>& traces) {
  if (traces.empty()) return {};
  ErrorTrace out = traces.front();
  for (std::size_t r = 1; r < traces.size(); ++r) {
    for (std::size_t k = 0; k < out.size(); ++k) {
      out[k].local_err += traces[r][k].local_err;
      out[k].comm_err += traces[r][k].comm_err;
      out[k].global_err += traces[r][k].global_err;
      out[k].pre_invertible_count += traces[r][k].pre_invertible_count;
    }
  }
  const double runs = static_cast<double>(traces.size());
  for (auto& row : out) {
    row.local_err /= runs;
    row.comm_err /= runs;
    row.global_err /= runs;
  }
  return out;
}

SimResult run(const SimConfig& config) {
  config.validate();
  SimResult result;
  result.traces.resize(static_cast<std::size_t>(config.runs));
  const int workers = std::min(config.parallel_runs, config.runs);
  if (workers <= 1) {
    for (int r = 0; r < config.runs; ++r) result.traces[r] = run_single(config, static_cast<std::uint64_t>(r));
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (int r = w; r < config.runs; r += workers) {
          result.traces[r] = run_single(config, static_cast<std::uint64_t>(r));
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  result.averaged = average_traces(result.traces);
  return result;
}

}  // namespace distls
