#include "distls/planner.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace distls {

namespace {

constexpr int kMaxSteps = 100'000'000;

}  // namespace

long next_multiple(long t, int zeta) {
  if (t <= 0) return zeta;
  return ((t + zeta - 1) / zeta) * zeta;
}

StepPlan plan_steps(const BoundInputs& in, int zeta, double epsilon_network) {
  in.validate();
  if (zeta < 1) throw std::invalid_argument("plan.zeta: must be >= 1");
  if (!(epsilon_network > 0.0)) throw std::invalid_argument("plan.epsilon_N: must be positive");

  StepPlan plan;
  plan.first_comm = next_multiple(burn_in_start(in, Confidence::DeltaHat), zeta);
  if (in.rho == 0.0) return plan;

  const double t = static_cast<double>(plan.first_comm);
  for (int steps = 1; steps <= kMaxSteps; ++steps) {
    if (std::pow(in.rho, steps) * network_constant(in, t, steps) <= epsilon_network) {
      plan.steps = steps;
      return plan;
    }
  }
  throw std::runtime_error("plan_steps: no T found below the step cap");
}

StopPlan plan_stop_time(const BoundInputs& in, int zeta, int steps, double epsilon, long horizon) {
  in.validate();
  if (zeta < 1) throw std::invalid_argument("plan.zeta: must be >= 1");
  if (steps < 1) throw std::invalid_argument("plan: T must be >= 1");
  if (!(epsilon > 0.0)) throw std::invalid_argument("plan.epsilon: must be positive");

  const long start = next_multiple(
      std::max(burn_in_start(in, Confidence::Delta), burn_in_start(in, Confidence::DeltaHat)), zeta);
  StopPlan plan;
  for (long t = start; t <= horizon; t += zeta) {
    plan.searched_until = t;
    const double local = local_bound(in, t).value;
    const double comm = comm_bound(in, t, steps).value;
    if (std::min(local, comm) < epsilon) {
      plan.reachable = true;
      plan.stop_time = t;
      return plan;
    }
  }
  return plan;
}

Schedule plan_schedule(const BoundInputs& in, int zeta, double epsilon, double epsilon_network, long horizon) {
  const StepPlan steps = plan_steps(in, zeta, epsilon_network);
  const StopPlan stop = plan_stop_time(in, zeta, steps.steps, epsilon, horizon);
  if (!stop.reachable) {
    throw std::runtime_error("plan: epsilon not reachable within horizon " + std::to_string(horizon));
  }
  Schedule s;
  s.zeta = zeta;
  s.steps = steps.steps;
  s.stop_time = stop.stop_time;
  s.epsilon = epsilon;
  s.epsilon_network = epsilon_network;
  return s;
}

}  // namespace distls
