#include "distls/commands.hpp"

#include <fstream>
#include <sstream>

#include "distls/trace_io.hpp"

namespace distls::cli {

using nlohmann::json;

namespace {

std::string matrix_text(const Matrix& m) {
  std::string s;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (i) s += ';';
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) s += ' ';
      s += format_exact(m(i, j));
    }
  }
  return s;
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
}

json burn_in_json(const BurnIn& b) { return {{"t1", b.t1}, {"t2", b.t2}, {"t3", b.t3}}; }

std::string opt_text(const std::optional<double>& v) { return v ? format_value(*v) : ""; }

}  // namespace

PlanOutcome make_plan(const ExperimentConfig& cfg) {
  if (!cfg.plan) throw ConfigError("plan", "missing field (the config gives a fixed schedule)");
  const ResolvedSchedule resolved = resolve_schedule(cfg);
  PlanOutcome out;
  out.schedule = resolved.schedule;
  out.step_plan = *resolved.step_plan;
  out.inputs = bound_inputs(cfg);
  out.comm_at_first = comm_bound(out.inputs, out.step_plan.first_comm, out.schedule.steps);
  out.comm_at_stop = comm_bound(out.inputs, out.schedule.stop_time, out.schedule.steps);
  out.local_at_stop = local_bound(out.inputs, out.schedule.stop_time);
  return out;
}

json plan_json(const PlanOutcome& p) {
  return {
      {"T", p.schedule.steps},
      {"S", p.schedule.stop_time},
      {"t_first", p.step_plan.first_comm},
      {"zeta", p.schedule.zeta},
      {"epsilon", p.schedule.epsilon},
      {"epsilon_N", p.schedule.epsilon_network},
      {"rho", p.inputs.rho},
      {"delta", p.inputs.delta},
      {"delta_hat", p.inputs.delta_hat},
      {"constants",
       {{"C1", p.comm_at_first.C1},
        {"c1", p.comm_at_first.c1},
        {"c2", p.comm_at_first.c2},
        {"c3", p.comm_at_first.c3},
        {"C0_at_t_first", p.comm_at_first.C0}}},
      {"burn_in",
       {{"delta", burn_in_json(burn_in(p.inputs, Confidence::Delta))},
        {"delta_hat", burn_in_json(burn_in(p.inputs, Confidence::DeltaHat))}}},
      {"network_term_at_t_first", p.comm_at_first.network_term},
      {"comm_bound_at_S", p.comm_at_stop.value},
      {"local_bound_at_S", p.local_at_stop.value},
  };
}

std::vector<BoundsRow> evaluate_bounds(const BoundInputs& in, int steps, const std::vector<long>& ts) {
  std::vector<BoundsRow> rows;
  for (long t : ts) {
    BoundsRow row;
    row.t = t;
    std::vector<std::string> notes;
    try {
      row.local = local_bound(in, t).value;
    } catch (const BurnInError& e) {
      notes.push_back("local valid from " + std::to_string(e.valid_from()));
    }
    try {
      row.global = global_bound(in, t).value;
    } catch (const BurnInError& e) {
      notes.push_back("global valid from " + std::to_string(e.valid_from()));
    }
    try {
      const BoundReport r = comm_bound(in, t, steps);
      row.comm = r.value;
      row.network_term = r.network_term;
      row.noise_term = r.noise_term;
    } catch (const BurnInError& e) {
      notes.push_back("comm valid from " + std::to_string(e.valid_from()));
    }
    if (notes.empty()) {
      row.status = "ok";
    } else {
      row.status = "below burn-in (";
      for (std::size_t k = 0; k < notes.size(); ++k) row.status += (k ? "; " : "") + notes[k];
      row.status += ")";
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string render_trace(const ExperimentConfig& cfg, const ResolvedSchedule& resolved, const SimResult& result) {
  const BoundInputs in = bound_inputs(cfg);
  const Schedule& s = resolved.schedule;
  std::vector<std::pair<std::string, std::string>> header{
      {"format", "distls-trace-v1"},
      {"n", std::to_string(cfg.model.n)},
      {"l", std::to_string(cfg.model.l)},
      {"m", std::to_string(cfg.model.m)},
      {"theta", matrix_text(cfg.model.theta)},
      {"sigma_x", format_exact(cfg.model.sigma_x)},
      {"sigma_eta", format_exact(cfg.model.sigma_eta)},
      {"mu_hat", format_exact(cfg.model.mu_hat())},
      {"network", cfg.network.topology.empty() ? "weights" : cfg.network.topology},
      {"weights", matrix_text(cfg.network.weights)},
      {"rho", format_exact(in.rho)},
      {"delta", format_exact(in.delta)},
      {"delta_hat", format_exact(in.delta_hat)},
      {"zeta", std::to_string(s.zeta)},
      {"T", std::to_string(s.steps)},
      {"S", std::to_string(s.stop_time)},
  };
  if (resolved.step_plan) {
    header.emplace_back("t_first", std::to_string(resolved.step_plan->first_comm));
    header.emplace_back("epsilon", format_exact(s.epsilon));
    header.emplace_back("epsilon_N", format_exact(s.epsilon_network));
  }
  header.emplace_back("horizon", std::to_string(cfg.run.horizon));
  header.emplace_back("runs", std::to_string(cfg.run.runs));
  header.emplace_back("seed", std::to_string(cfg.run.seed));
  header.emplace_back("writeback_mixed", cfg.run.writeback_mixed ? "true" : "false");

  BoundColumns cols;
  const long local_from = burn_in_start(in, Confidence::Delta);
  const long comm_from = burn_in_start(in, Confidence::DeltaHat);
  for (const TraceRow& row : result.averaged) {
    cols.local.push_back(row.t >= local_from ? std::optional(local_bound(in, row.t).value) : std::nullopt);
    cols.comm.push_back(row.t >= comm_from ? std::optional(comm_bound(in, row.t, s.steps).value) : std::nullopt);
  }
  std::ostringstream out;
  write_trace(out, header, result.averaged, cols);
  return out.str();
}

int cmd_plan(const std::string& config_path, const std::string& output_path, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ExperimentConfig cfg = load_config(config_path);
    const PlanOutcome plan = make_plan(cfg);
    const json doc = plan_json(plan);
    out << "rho(W)            " << format_value(plan.inputs.rho) << '\n'
        << "first comm time   " << plan.step_plan.first_comm << '\n'
        << "T (steps/phase)   " << plan.schedule.steps << '\n'
        << "S (stop time)     " << plan.schedule.stop_time << '\n'
        << "C1                " << format_value(plan.comm_at_first.C1) << '\n'
        << "c1, c2, c3        " << format_value(plan.comm_at_first.c1) << ", " << format_value(plan.comm_at_first.c2)
        << ", " << format_value(plan.comm_at_first.c3) << '\n'
        << "network term      " << format_value(plan.comm_at_first.network_term) << " at t=" << plan.step_plan.first_comm
        << '\n'
        << "comm bound at S   " << format_value(plan.comm_at_stop.value) << '\n';
    std::ofstream file(output_path);
    if (!file) throw std::runtime_error("cannot write '" + output_path + "'");
    file << doc.dump(2) << '\n';
    if (!file) throw std::runtime_error("failed writing '" + output_path + "'");
    return int{kOk};
  });
}

int cmd_simulate(const std::string& config_path, const std::string& output_path, int parallel_runs,
                 std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ExperimentConfig cfg = load_config(config_path);
    const ResolvedSchedule resolved = resolve_schedule(cfg);
    const SimConfig sim = make_sim_config(cfg, resolved.schedule, parallel_runs);
    const SimResult result = run(sim);
    const std::string text = render_trace(cfg, resolved, result);
    std::ofstream file(output_path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write '" + output_path + "'");
    file << text;
    if (!file) throw std::runtime_error("failed writing '" + output_path + "'");
    out << "wrote " << result.averaged.size() << " rows to " << output_path << " (T=" << resolved.schedule.steps
        << ", S=" << resolved.schedule.stop_time << ")\n";
    return int{kOk};
  });
}

int cmd_bounds(const std::string& config_path, const std::vector<long>& ts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ExperimentConfig cfg = load_config(config_path);
    const ResolvedSchedule resolved = resolve_schedule(cfg);
    const BoundInputs in = bound_inputs(cfg);
    out << "t,local,global,comm,network_term,noise_term,status\n";
    for (const BoundsRow& r : evaluate_bounds(in, resolved.schedule.steps, ts)) {
      out << r.t << ',' << opt_text(r.local) << ',' << opt_text(r.global) << ',' << opt_text(r.comm) << ','
          << opt_text(r.network_term) << ',' << opt_text(r.noise_term) << ',' << r.status << '\n';
    }
    return int{kOk};
  });
}

}  // namespace distls::cli
