// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.
//
//   acceptance <scratch dir>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "distls/commands.hpp"
#include "distls/config.hpp"
#include "distls/local_estimator.hpp"
#include "reference_inputs.hpp"
#include "random_weights.hpp"

using namespace distls;

namespace {

const std::string kSource = DISTLS_SOURCE_DIR;
const std::string kCli = DISTLS_CLI_PATH;

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

void note(Outcome& o, bool ok, const std::string& what) {
  if (!ok) o.pass = false;
  if (!o.detail.empty()) o.detail += "; ";
  o.detail += what + (ok ? "" : " [FAIL]");
}

// 1. Planner reproduction.
Outcome planner_reproduction() {
  Outcome o;
  const auto start = Clock::now();
  const ExperimentConfig cfg = load_config(kSource + "/configs/ring6.json");
  const cli::PlanOutcome plan = cli::make_plan(cfg);
  const double elapsed = seconds_since(start);
  note(o, plan.schedule.steps == 38, "T=" + std::to_string(plan.schedule.steps));
  note(o, std::labs(plan.schedule.stop_time - 1620) <= 20, "S=" + std::to_string(plan.schedule.stop_time));
  note(o, elapsed < 1.0, fmt("%.3fs", elapsed));
  return o;
}

// 2. Spectral gap of the ring.
Outcome ring_rho() {
  Outcome o;
  const ExperimentConfig cfg = load_config(kSource + "/configs/ring6.json");
  const double rho = resolve_weights(cfg).rho();
  note(o, std::abs(rho - 2.0 / 3.0) <= 1e-10, fmt("rho=%.15f", rho));
  return o;
}

// 3. Error curves of the 10-run experiment.
Outcome error_curves() {
  Outcome o;
  const auto start = Clock::now();
  const ExperimentConfig cfg = load_config(kSource + "/configs/ring6.json");
  const ResolvedSchedule rs = resolve_schedule(cfg);
  const SimResult result = run(make_sim_config(cfg, rs.schedule));
  const double elapsed = seconds_since(start);

  double worst_rel = 0.0;
  bool below_local = true;
  int comm_times = 0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int npts = 0;
  for (const TraceRow& row : result.averaged) {
    if (row.comm_fired) {
      ++comm_times;
      if (row.t >= 200) worst_rel = std::max(worst_rel, std::abs(row.comm_err - row.global_err) / row.global_err);
      if (row.t <= 400 && !(row.comm_err < row.local_err)) below_local = false;
    }
    if (row.t >= 200 && row.t <= 3000) {
      const double x = std::log(static_cast<double>(row.t));
      const double y = std::log(row.global_err);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++npts;
    }
  }
  const double slope = (npts * sxy - sx * sy) / (npts * sxx - sx * sx);
  note(o, result.averaged.size() == 3000 && result.traces.size() == 10, "10 runs x 3000");
  note(o, comm_times > 0 && worst_rel <= 0.05, fmt("(a) max comm/global rel gap %.2e", worst_rel));
  note(o, below_local, "(b) comm < local for t<=400");
  note(o, std::abs(slope + 0.5) <= 0.1, fmt("(c) slope %.4f", slope));
  note(o, elapsed < 60.0, fmt("%.2fs", elapsed));
  return o;
}

// 4. Oracle equivalences.
Outcome oracles() {
  Outcome o;
  {
    const ModelSpec spec = testing::reference_model();
    const SeededStream stream(77);
    AgentState st = init_agent(2, 2);
    Matrix X(1000, 2), Y(1000, 2);
    for (long t = 1; t <= 1000; ++t) {
      const DataPair p = sample_pair(spec, stream, 0, 0, t);
      ingest(st, p);
      X.row(t - 1) = p.x.transpose();
      Y.row(t - 1) = p.y.transpose();
    }
    const Matrix batch = X.colPivHouseholderQr().solve(Y).transpose();
    const double rel = (st.theta_local - batch).norm() / batch.norm();
    note(o, rel <= 1e-8, fmt("(a) SM vs batch %.2e", rel));
  }
  {
    std::mt19937_64 rng(5);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const int m = 2 + trial % 9;
      const WeightMatrix w = WeightMatrix::validate(testing::random_metropolis_weights(rng, m));
      std::normal_distribution<double> g;
      std::vector<Matrix> alphas(m, Matrix(2, 3)), betas(m, Matrix(3, 3));
      for (int i = 0; i < m; ++i) {
        alphas[i] = Matrix::NullaryExpr(2, 3, [&] { return g(rng); });
        const Matrix a = Matrix::NullaryExpr(3, 3, [&] { return g(rng); });
        betas[i] = a * a.transpose();
      }
      for (int steps : {1, 7, 33, 64}) {
        const CommPhaseResult r = run_comm_phase(w, alphas, betas, steps);
        Matrix wt = Matrix::Identity(m, m);
        for (int k = 0; k < steps; ++k) wt = wt * w.matrix();
        for (int i = 0; i < m; ++i) {
          Matrix ea = Matrix::Zero(2, 3), eb = Matrix::Zero(3, 3);
          for (int j = 0; j < m; ++j) {
            ea += wt(i, j) * alphas[j];
            eb += wt(i, j) * betas[j];
          }
          worst = std::max({worst, (r.alphas[i] - ea).cwiseAbs().maxCoeff(), (r.betas[i] - eb).cwiseAbs().maxCoeff()});
        }
      }
    }
    note(o, worst <= 1e-10, fmt("(b) W^T mixing %.2e", worst));
  }
  {
    SimConfig c = testing::reference_sim_config(400, 1, 31);
    c.weights = WeightMatrix::validate(complete_topology(6));
    c.schedule = {20, 1, 400, 0.0, 0.0};
    Network net(c, 0);
    double worst = 0.0;
    for (long t = 1; t <= c.horizon; ++t) {
      if (!net.step(t).comm_fired) continue;
      const Matrix pooled = net.global_estimate();
      for (const auto& a : net.agents()) worst = std::max(worst, (a.theta_comm - pooled).norm());
    }
    note(o, worst <= 1e-10, fmt("(c) complete W vs pooled %.2e", worst));
  }
  return o;
}

// 5. Property suites.
Outcome properties() {
  Outcome o;
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  double worst_sum = 0.0;
  bool deficit_ok = true;
  for (int trial = 0; trial < 100; ++trial) {
    const int m = 2 + trial % 9;
    const WeightMatrix w = WeightMatrix::validate(testing::random_metropolis_weights(rng, m));
    std::vector<Matrix> alphas(m), betas(m);
    Matrix sa = Matrix::Zero(2, 2), sb = Matrix::Zero(2, 2);
    for (int i = 0; i < m; ++i) {
      alphas[i] = Matrix::NullaryExpr(2, 2, [&] { return g(rng); });
      const Matrix a = Matrix::NullaryExpr(2, 2, [&] { return g(rng); });
      betas[i] = a * a.transpose();
      sa += alphas[i];
      sb += betas[i];
    }
    const CommPhaseResult r = run_comm_phase(w, alphas, betas, 1 + trial % 20);
    Matrix ra = Matrix::Zero(2, 2), rb = Matrix::Zero(2, 2);
    for (int i = 0; i < m; ++i) {
      ra += r.alphas[i];
      rb += r.betas[i];
    }
    worst_sum = std::max({worst_sum, (ra - sa).norm() / sa.norm(), (rb - sb).norm() / sb.norm()});
    for (int steps = 1; steps <= 50; ++steps) {
      if (mixing_deficit(w, steps) > std::sqrt(static_cast<double>(m)) * std::pow(w.rho(), steps) + 1e-12) {
        deficit_ok = false;
      }
    }
  }
  note(o, worst_sum <= 1e-10, fmt("sum preservation %.2e", worst_sum));
  note(o, deficit_ok, "mixing deficit <= sqrt(m) rho^T");

  bool psd = true;
  const ModelSpec spec = testing::reference_model();
  for (int run_idx = 0; run_idx < 20; ++run_idx) {
    const SeededStream stream(1000 + run_idx);
    AgentState st = init_agent(2, 2);
    for (long t = 1; t <= 200; ++t) {
      const Matrix before = st.beta;
      ingest(st, sample_pair(spec, stream, 0, 0, t));
      const Eigen::SelfAdjointEigenSolver<Matrix> es(st.beta - before);
      if (es.eigenvalues().minCoeff() < -1e-9 * st.beta.norm()) psd = false;
    }
  }
  note(o, psd, "beta PSD monotone");

  bool mono = true;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    BoundInputs in;
    in.n = 1 + trial % 4;
    in.l = 1 + (trial / 4) % 3;
    in.m = 2 + trial % 9;
    in.sigma_x_lower = 0.5 + 3.0 * u(rng);
    in.sigma_x_upper = in.sigma_x_lower * (1.0 + 0.5 * u(rng));
    in.sigma_eta_upper = 0.1 + 2.0 * u(rng);
    in.mu_hat_upper = trial % 3 == 0 ? 0.0 : 0.5 * u(rng);
    in.theta_norm_upper = 0.2 + 3.0 * u(rng);
    in.delta = 0.01 + 0.2 * u(rng);
    in.delta_hat = 0.0005 + 0.01 * u(rng);
    in.rho = 0.05 + 0.9 * u(rng);
    const long t0 = burn_in_start(in, Confidence::DeltaHat);
    double prev_local = INFINITY, prev_comm = INFINITY;
    for (long t = t0; t < t0 + 2000; t += 97) {
      const double lb = local_bound(in, t).value;
      const double cb = comm_bound(in, t, 10).value;
      if (!(lb < prev_local) || !(cb < prev_comm)) mono = false;
      prev_local = lb;
      prev_comm = cb;
    }
    double prev_net = INFINITY, prev_val = INFINITY;
    for (int steps = 1; steps <= 60; ++steps) {
      const BoundReport r = comm_bound(in, t0, steps);
      if (!(r.network_term < prev_net) || r.value > prev_val) mono = false;
      prev_net = r.network_term;
      prev_val = r.value;
    }
  }
  note(o, mono, "bounds monotone in t and T");
  return o;
}

// 6. Empirical coverage of the local bound.
Outcome coverage() {
  Outcome o;
  const auto start = Clock::now();
  const BoundInputs in = testing::reference_bound_inputs();
  const long t = 400;
  const double bound = local_bound(in, t).value;  // delta = 0.05
  SimConfig c = testing::reference_sim_config(t, 200, 424242);
  c.schedule = {20, 38, 400, 0.0, 0.0};
  c.validate();
  // The guarantee is per agent, so every agent of every run counts.
  int violations = 0;
  int samples = 0;
  for (int r = 0; r < 200; ++r) {
    Network net(c, r);
    for (long k = 1; k <= t; ++k) net.step(k);
    for (const auto& a : net.agents()) {
      ++samples;
      if (spectral_norm(a.theta_local - c.model.theta) > bound) ++violations;
    }
  }
  const double freq = static_cast<double>(violations) / samples;
  const double elapsed = seconds_since(start);
  note(o, samples == 1200, std::to_string(samples) + " agent-runs");
  note(o, freq <= 0.20, fmt("violation frequency %.4f", freq) + fmt(" (bound %.4f)", bound));
  note(o, elapsed < 120.0, fmt("%.2fs", elapsed));
  return o;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 7. Byte-identical traces from the command-line tool.
Outcome determinism(const std::string& scratch) {
  Outcome o;
  const std::string config = kSource + "/configs/ring6.json";
  const std::string a = scratch + "/acceptance_trace_a.csv";
  const std::string b = scratch + "/acceptance_trace_b.csv";
  const std::string c = scratch + "/acceptance_trace_c.csv";
  const int ra = std::system((kCli + " simulate " + config + " -o " + a + " > /dev/null").c_str());
  const int rb = std::system((kCli + " simulate " + config + " -o " + b + " > /dev/null").c_str());
  const int rc = std::system((kCli + " simulate " + config + " -o " + c + " --parallel-runs 4 > /dev/null").c_str());
  note(o, ra == 0 && rb == 0 && rc == 0, "exit codes");
  const std::string ta = slurp(a);
  note(o, !ta.empty() && ta == slurp(b), "repeat identical");
  note(o, !ta.empty() && ta == slurp(c), "parallel identical");
  note(o, ta.size() > 0, std::to_string(ta.size()) + " bytes");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string scratch = argc > 1 ? argv[1] : ".";
  struct Criterion {
    const char* name;
    std::function<Outcome()> check;
  };
  const std::vector<Criterion> criteria = {
      {"1 planner T and S", planner_reproduction},
      {"2 ring spectral gap", ring_rho},
      {"3 error curves", error_curves},
      {"4 oracle equivalences", oracles},
      {"5 property suites", properties},
      {"6 bound coverage", coverage},
      {"7 determinism", [&] { return determinism(scratch); }},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s  %-24s %s\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
