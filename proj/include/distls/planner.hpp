#pragma once

#include "distls/bounds.hpp"

namespace distls {

/// Communication schedule: a phase of `steps` consensus rounds fires at every
/// t with t % zeta == 0 and t <= stop_time.
struct Schedule {
  int zeta = 1;
  int steps = 1;  // T
  long stop_time = 0;  // S
  double epsilon = 0.0;
  double epsilon_network = 0.0;  // epsilon_N

  bool fires_at(long t) const { return t % zeta == 0 && t <= stop_time; }
};

struct StepPlan {
  int steps = 1;       // T
  long first_comm = 0;  // first communication time past the delta_hat burn-in
};

/// Smallest T >= 1 with rho^T C0(t_first, T) <= epsilon_network.
StepPlan plan_steps(const BoundInputs& in, int zeta, double epsilon_network);

struct StopPlan {
  bool reachable = false;
  long stop_time = 0;      // S, valid when reachable
  long searched_until = 0;  // last candidate examined
};

inline constexpr long kDefaultSearchHorizon = 100'000'000;

/// Smallest multiple of zeta past both burn-ins where
/// min(local_bound(t), comm_bound(t, T)) < epsilon, searched up to `horizon`.
StopPlan plan_stop_time(const BoundInputs& in, int zeta, int steps, double epsilon,
                        long horizon = kDefaultSearchHorizon);

/// Runs plan_steps then plan_stop_time. Throws std::runtime_error if S is not
/// reachable within the horizon.
Schedule plan_schedule(const BoundInputs& in, int zeta, double epsilon, double epsilon_network,
                       long horizon = kDefaultSearchHorizon);

/// Smallest multiple of zeta that is >= t.
long next_multiple(long t, int zeta);

}  // namespace distls
