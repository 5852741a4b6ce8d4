#pragma once

// JSON experiment configuration.
//
//   model    {theta, sigma_x, sigma_eta, n, l, m, mean_schedule}
//   network  {weights} | {topology: "ring", self_weight} | {topology: "complete"}
//   bounds   {delta, delta_hat, overrides {sigma_x_lower, sigma_x_upper,
//             sigma_eta_upper, mu_hat_upper, theta_norm_upper}}
//   plan     {zeta, epsilon, epsilon_N, search_horizon}   -- exactly one of
//   schedule {zeta, T, S}                                 -- plan / schedule
//   run      {horizon, runs, seed, writeback_mixed}
//
// Matrices are arrays of rows. A flat row-major array is also accepted.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "distls/bounds.hpp"
#include "distls/consensus.hpp"
#include "distls/model_gen.hpp"
#include "distls/planner.hpp"
#include "distls/simnet.hpp"

namespace distls {

/// Configuration problem; path() is the dotted JSON path of the bad field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct NetworkSection {
  std::string topology;  // "ring", "complete", or empty for explicit weights
  double self_weight = 1.0 / 3.0;
  Matrix weights;        // resolved dense matrix
};

struct BoundsSection {
  double delta = 0.05;
  double delta_hat = 0.001;
  std::optional<double> sigma_x_lower;
  std::optional<double> sigma_x_upper;
  std::optional<double> sigma_eta_upper;
  std::optional<double> mu_hat_upper;
  std::optional<double> theta_norm_upper;
};

struct PlanSection {
  int zeta = 1;
  double epsilon = 0.0;
  double epsilon_network = 0.0;
  long search_horizon = kDefaultSearchHorizon;
};

struct RunSection {
  long horizon = 1;
  int runs = 1;
  std::uint64_t seed = 0;
  bool writeback_mixed = false;
};

struct ExperimentConfig {
  ModelSpec model;
  NetworkSection network;
  BoundsSection bounds;
  std::optional<PlanSection> plan;
  std::optional<Schedule> schedule;
  RunSection run;
};

/// Environment variable consulted for run.seed when the config omits it.
inline constexpr const char* kSeedEnvVar = "DISTLS_SEED";
inline constexpr std::uint64_t kDefaultSeed = 20210101;

ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::string& path);
nlohmann::json to_json(const ExperimentConfig& config);

/// Validated weight matrix; throws ConfigError at "network".
WeightMatrix resolve_weights(const ExperimentConfig& config);

/// Bound inputs from the true model parameters, with any overrides applied.
BoundInputs bound_inputs(const ExperimentConfig& config);

struct ResolvedSchedule {
  Schedule schedule;
  std::optional<StepPlan> step_plan;  // set when planned
};

/// The given schedule, or the planner's. Throws ConfigError / std::runtime_error.
ResolvedSchedule resolve_schedule(const ExperimentConfig& config);

SimConfig make_sim_config(const ExperimentConfig& config, const Schedule& schedule, int parallel_runs = 1);

}  // namespace distls
