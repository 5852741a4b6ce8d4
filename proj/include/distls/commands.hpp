#pragma once

// Implementations behind the `distls` command-line tool, kept in the library
// so they can be driven from tests.

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "distls/config.hpp"
#include "distls/simnet.hpp"

namespace distls::cli {

enum ExitCode : int { kOk = 0, kConfigError = 2, kRuntimeError = 3 };

struct PlanOutcome {
  Schedule schedule;
  StepPlan step_plan;
  BoundInputs inputs;
  BoundReport comm_at_first;  // Communicated bound at (t_first, T)
  BoundReport comm_at_stop;   // Communicated bound at (S, T)
  BoundReport local_at_stop;
};

/// Requires a plan section; throws ConfigError("plan") otherwise.
PlanOutcome make_plan(const ExperimentConfig& config);
nlohmann::json plan_json(const PlanOutcome& plan);

struct BoundsRow {
  long t = 0;
  std::optional<double> local;
  std::optional<double> global;
  std::optional<double> comm;
  std::optional<double> network_term;
  std::optional<double> noise_term;
  std::string status;  // "ok" or a burn-in note
};

std::vector<BoundsRow> evaluate_bounds(const BoundInputs& inputs, int steps, const std::vector<long>& ts);

/// Full trace file contents for a finished simulation.
std::string render_trace(const ExperimentConfig& config, const ResolvedSchedule& schedule, const SimResult& result);

int cmd_plan(const std::string& config_path, const std::string& output_path, std::ostream& out, std::ostream& err);
int cmd_simulate(const std::string& config_path, const std::string& output_path, int parallel_runs,
                 std::ostream& out, std::ostream& err);
int cmd_bounds(const std::string& config_path, const std::vector<long>& ts, std::ostream& out, std::ostream& err);

}  // namespace distls::cli
