#pragma once

// Synchronous multi-agent simulation: every agent ingests one sample per
// step, and at scheduled steps the network runs a full consensus phase on the
// sufficient statistics before the next sample arrives.

#include <cstdint>
#include <vector>

#include "distls/consensus.hpp"
#include "distls/local_estimator.hpp"
#include "distls/model_gen.hpp"
#include "distls/planner.hpp"

namespace distls {

struct SimConfig {
  ModelSpec model;
  WeightMatrix weights;
  Schedule schedule;
  long horizon = 1;
  int runs = 1;
  std::uint64_t seed = 0;
  /// Replace each agent's statistics with the mixed ones after a phase.
  bool writeback_mixed = false;
  /// Worker threads for independent runs; results do not depend on it.
  int parallel_runs = 1;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

struct TraceRow {
  long t = 0;
  double local_err = 0.0;   // mean over agents of ||theta_local - Theta||
  double comm_err = 0.0;    // mean over agents of ||theta_comm - Theta||
  double global_err = 0.0;  // ||pooled estimate - Theta||
  bool comm_fired = false;
  long pre_invertible_count = 0;
};

using ErrorTrace = std::vector<TraceRow>;

/// World state of one Monte Carlo run.
class Network {
 public:
  Network(const SimConfig& config, std::uint64_t run);

  /// Ingests the samples of step t (t >= 1, called in order) and runs the
  /// communication phase if one is scheduled.
  TraceRow step(long t);

  const std::vector<AgentState>& agents() const { return agents_; }

  /// (sum alpha_i) pinv(sum beta_i) over all agents.
  Matrix global_estimate() const;

  /// Observer for the consensus rounds of subsequent phases.
  void set_comm_observer(CommObserver observer) { observer_ = std::move(observer); }

  long time() const { return time_; }

 private:
  const SimConfig& config_;
  SeededStream stream_;
  std::uint64_t run_;
  std::vector<AgentState> agents_;
  CommObserver observer_;
  long time_ = 0;
};

struct SimResult {
  std::vector<ErrorTrace> traces;  // one per run, in run order
  ErrorTrace averaged;             // error columns averaged, pre_invertible_count summed
};

ErrorTrace run_single(const SimConfig& config, std::uint64_t run);

SimResult run(const SimConfig& config);

ErrorTrace average_traces(const std::vector<ErrorTrace>& traces);

}  // namespace distls
