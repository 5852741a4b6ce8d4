#include "distls/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>

namespace distls {

using nlohmann::json;

namespace {

std::string join(const std::string& base, const std::string& key) { return base.empty() ? key : base + "." + key; }

const json& field(const json& obj, const std::string& base, const std::string& key) {
  if (!obj.is_object() || !obj.contains(key)) throw ConfigError(join(base, key), "missing field");
  return obj.at(key);
}

double number(const json& obj, const std::string& base, const std::string& key) {
  const json& v = field(obj, base, key);
  if (!v.is_number()) throw ConfigError(join(base, key), "expected a number");
  return v.get<double>();
}

long integer(const json& obj, const std::string& base, const std::string& key) {
  const json& v = field(obj, base, key);
  if (!v.is_number_integer()) throw ConfigError(join(base, key), "expected an integer");
  return v.get<long>();
}

std::optional<double> optional_number(const json& obj, const std::string& base, const std::string& key) {
  if (!obj.is_object() || !obj.contains(key)) return std::nullopt;
  return number(obj, base, key);
}

Vector vector_of(const json& v, const std::string& path) {
  if (!v.is_array()) throw ConfigError(path, "expected an array of numbers");
  Vector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) throw ConfigError(path + "[" + std::to_string(i) + "]", "expected a number");
    out(static_cast<Eigen::Index>(i)) = v[i].get<double>();
  }
  return out;
}

// Array of rows, or a flat row-major array when rows/cols are known.
Matrix matrix_of(const json& v, const std::string& path, long rows, long cols) {
  if (!v.is_array() || v.empty()) throw ConfigError(path, "expected a non-empty array");
  if (v.front().is_array()) {
    Matrix out(static_cast<Eigen::Index>(v.size()), static_cast<Eigen::Index>(v.front().size()));
    for (std::size_t i = 0; i < v.size(); ++i) {
      const std::string row_path = path + "[" + std::to_string(i) + "]";
      const Vector row = vector_of(v[i], row_path);
      if (row.size() != out.cols()) throw ConfigError(row_path, "ragged matrix row");
      out.row(static_cast<Eigen::Index>(i)) = row.transpose();
    }
    if ((rows > 0 && out.rows() != rows) || (cols > 0 && out.cols() != cols)) {
      throw ConfigError(path, "expected a " + std::to_string(rows) + "x" + std::to_string(cols) + " matrix");
    }
    return out;
  }
  const Vector flat = vector_of(v, path);
  if (rows <= 0 || cols <= 0 || flat.size() != rows * cols) {
    throw ConfigError(path, "flat array length does not match the matrix dimensions");
  }
  Matrix out(rows, cols);
  for (long i = 0; i < rows; ++i) {
    for (long j = 0; j < cols; ++j) out(i, j) = flat(i * cols + j);
  }
  return out;
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

json vector_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

std::vector<Vector> vectors_of(const json& v, const std::string& path) {
  if (!v.is_array()) throw ConfigError(path, "expected an array of vectors");
  std::vector<Vector> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(vector_of(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

MeanSchedule parse_mean_schedule(const json& model) {
  const std::string base = "model.mean_schedule";
  if (!model.contains("mean_schedule")) return ZeroMean{};
  const json& s = model.at("mean_schedule");
  if (s.is_string() && s.get<std::string>() == "zero") return ZeroMean{};
  if (!s.is_object()) throw ConfigError(base, "expected \"zero\" or an object with a kind");
  const json& kind = field(s, base, "kind");
  if (!kind.is_string()) throw ConfigError(base + ".kind", "expected a string");
  const std::string k = kind.get<std::string>();
  if (k == "zero") return ZeroMean{};
  if (k == "constant") return ConstantMean{vectors_of(field(s, base, "means"), base + ".means")};
  if (k == "sinusoid") {
    SinusoidMean out;
    out.amplitudes = vectors_of(field(s, base, "amplitudes"), base + ".amplitudes");
    const Vector periods = vector_of(field(s, base, "periods"), base + ".periods");
    out.periods.assign(periods.data(), periods.data() + periods.size());
    return out;
  }
  throw ConfigError(base + ".kind", "unknown mean schedule '" + k + "'");
}

json mean_schedule_json(const MeanSchedule& schedule) {
  if (const auto* c = std::get_if<ConstantMean>(&schedule)) {
    json means = json::array();
    for (const auto& v : c->means) means.push_back(vector_json(v));
    return {{"kind", "constant"}, {"means", means}};
  }
  if (const auto* s = std::get_if<SinusoidMean>(&schedule)) {
    json amps = json::array();
    for (const auto& v : s->amplitudes) amps.push_back(vector_json(v));
    return {{"kind", "sinusoid"}, {"amplitudes", amps}, {"periods", s->periods}};
  }
  return {{"kind", "zero"}};
}

ModelSpec parse_model(const json& doc) {
  const json& model = field(doc, "", "model");
  ModelSpec spec;
  spec.n = static_cast<int>(integer(model, "model", "n"));
  spec.l = static_cast<int>(integer(model, "model", "l"));
  spec.m = static_cast<int>(integer(model, "model", "m"));
  if (spec.n < 1) throw ConfigError("model.n", "must be >= 1");
  if (spec.l < 1) throw ConfigError("model.l", "must be >= 1");
  if (spec.m < 1) throw ConfigError("model.m", "must be >= 1");
  spec.theta = matrix_of(field(model, "model", "theta"), "model.theta", spec.l, spec.n);
  spec.sigma_x = number(model, "model", "sigma_x");
  spec.sigma_eta = number(model, "model", "sigma_eta");
  spec.mean_schedule = parse_mean_schedule(model);
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    const auto colon = msg.find(':');
    throw ConfigError(colon == std::string::npos ? "model" : msg.substr(0, colon),
                      colon == std::string::npos ? msg : msg.substr(colon + 2));
  }
  return spec;
}

NetworkSection parse_network(const json& doc, int m) {
  const json& net = field(doc, "", "network");
  NetworkSection out;
  const bool has_weights = net.contains("weights");
  const bool has_topology = net.contains("topology");
  if (has_weights == has_topology) throw ConfigError("network", "give exactly one of weights or topology");
  if (has_weights) {
    out.weights = matrix_of(net.at("weights"), "network.weights", m, m);
    if (out.weights.rows() != m || out.weights.cols() != m) {
      throw ConfigError("network.weights", "expected an m x m matrix");
    }
    return out;
  }
  const json& topo = net.at("topology");
  if (!topo.is_string()) throw ConfigError("network.topology", "expected a string");
  out.topology = topo.get<std::string>();
  if (net.contains("m") && integer(net, "network", "m") != m) {
    throw ConfigError("network.m", "must equal model.m");
  }
  if (out.topology == "ring") {
    if (auto s = optional_number(net, "network", "self_weight")) out.self_weight = *s;
    if (!(out.self_weight >= 0.0 && out.self_weight <= 1.0)) {
      throw ConfigError("network.self_weight", "must lie in [0, 1]");
    }
    out.weights = ring_topology(m, out.self_weight);
  } else if (out.topology == "complete") {
    out.weights = complete_topology(m);
  } else {
    throw ConfigError("network.topology", "unknown topology '" + out.topology + "'");
  }
  return out;
}

BoundsSection parse_bounds(const json& doc) {
  BoundsSection out;
  if (!doc.contains("bounds")) return out;
  const json& b = doc.at("bounds");
  if (auto d = optional_number(b, "bounds", "delta")) out.delta = *d;
  if (auto d = optional_number(b, "bounds", "delta_hat")) out.delta_hat = *d;
  if (!(out.delta > 0.0 && out.delta < 1.0)) throw ConfigError("bounds.delta", "must lie in (0, 1)");
  if (!(out.delta_hat > 0.0 && out.delta_hat < 1.0)) throw ConfigError("bounds.delta_hat", "must lie in (0, 1)");
  if (b.contains("overrides")) {
    const json& o = b.at("overrides");
    const std::string base = "bounds.overrides";
    out.sigma_x_lower = optional_number(o, base, "sigma_x_lower");
    out.sigma_x_upper = optional_number(o, base, "sigma_x_upper");
    out.sigma_eta_upper = optional_number(o, base, "sigma_eta_upper");
    out.mu_hat_upper = optional_number(o, base, "mu_hat_upper");
    out.theta_norm_upper = optional_number(o, base, "theta_norm_upper");
  }
  return out;
}

RunSection parse_run(const json& doc) {
  const json& r = field(doc, "", "run");
  RunSection out;
  out.horizon = integer(r, "run", "horizon");
  out.runs = static_cast<int>(integer(r, "run", "runs"));
  if (out.horizon < 1) throw ConfigError("run.horizon", "must be >= 1");
  if (out.runs < 1) throw ConfigError("run.runs", "must be >= 1");
  if (r.contains("seed")) {
    const json& s = r.at("seed");
    if (!s.is_number_unsigned() && !s.is_number_integer()) throw ConfigError("run.seed", "expected an integer");
    out.seed = s.get<std::uint64_t>();
  } else if (const char* env = std::getenv(kSeedEnvVar)) {
    try {
      out.seed = std::stoull(env);
    } catch (const std::exception&) {
      throw ConfigError("run.seed", std::string("cannot parse ") + kSeedEnvVar + "='" + env + "'");
    }
  } else {
    out.seed = kDefaultSeed;
  }
  if (r.contains("writeback_mixed")) {
    if (!r.at("writeback_mixed").is_boolean()) throw ConfigError("run.writeback_mixed", "expected a boolean");
    out.writeback_mixed = r.at("writeback_mixed").get<bool>();
  }
  return out;
}

}  // namespace

ExperimentConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("", "config must be a JSON object");
  ExperimentConfig cfg;
  cfg.model = parse_model(doc);
  cfg.network = parse_network(doc, cfg.model.m);
  cfg.bounds = parse_bounds(doc);

  const bool has_plan = doc.contains("plan");
  const bool has_schedule = doc.contains("schedule");
  if (has_plan == has_schedule) throw ConfigError("plan", "give exactly one of plan or schedule");
  if (has_plan) {
    const json& p = doc.at("plan");
    PlanSection plan;
    plan.zeta = static_cast<int>(integer(p, "plan", "zeta"));
    plan.epsilon = number(p, "plan", "epsilon");
    plan.epsilon_network = number(p, "plan", "epsilon_N");
    if (p.contains("search_horizon")) plan.search_horizon = integer(p, "plan", "search_horizon");
    if (plan.zeta < 1) throw ConfigError("plan.zeta", "must be >= 1");
    if (!(plan.epsilon > 0.0)) throw ConfigError("plan.epsilon", "must be positive");
    if (!(plan.epsilon_network > 0.0)) throw ConfigError("plan.epsilon_N", "must be positive");
    cfg.plan = plan;
  } else {
    const json& s = doc.at("schedule");
    Schedule sched;
    sched.zeta = static_cast<int>(integer(s, "schedule", "zeta"));
    sched.steps = static_cast<int>(integer(s, "schedule", "T"));
    sched.stop_time = integer(s, "schedule", "S");
    if (sched.zeta < 1) throw ConfigError("schedule.zeta", "must be >= 1");
    if (sched.steps < 1) throw ConfigError("schedule.T", "must be >= 1");
    if (sched.stop_time < 0 || sched.stop_time % sched.zeta != 0) {
      throw ConfigError("schedule.S", "must be a nonnegative multiple of zeta");
    }
    cfg.schedule = sched;
  }
  cfg.run = parse_run(doc);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("invalid JSON: ") + e.what());
  }
  return parse_config(doc);
}

json to_json(const ExperimentConfig& cfg) {
  json doc;
  doc["model"] = {{"theta", matrix_json(cfg.model.theta)},
                  {"sigma_x", cfg.model.sigma_x},
                  {"sigma_eta", cfg.model.sigma_eta},
                  {"n", cfg.model.n},
                  {"l", cfg.model.l},
                  {"m", cfg.model.m},
                  {"mean_schedule", mean_schedule_json(cfg.model.mean_schedule)}};
  if (cfg.network.topology.empty()) {
    doc["network"] = {{"weights", matrix_json(cfg.network.weights)}};
  } else if (cfg.network.topology == "ring") {
    doc["network"] = {{"topology", "ring"}, {"self_weight", cfg.network.self_weight}};
  } else {
    doc["network"] = {{"topology", cfg.network.topology}};
  }
  json bounds = {{"delta", cfg.bounds.delta}, {"delta_hat", cfg.bounds.delta_hat}};
  json overrides = json::object();
  if (cfg.bounds.sigma_x_lower) overrides["sigma_x_lower"] = *cfg.bounds.sigma_x_lower;
  if (cfg.bounds.sigma_x_upper) overrides["sigma_x_upper"] = *cfg.bounds.sigma_x_upper;
  if (cfg.bounds.sigma_eta_upper) overrides["sigma_eta_upper"] = *cfg.bounds.sigma_eta_upper;
  if (cfg.bounds.mu_hat_upper) overrides["mu_hat_upper"] = *cfg.bounds.mu_hat_upper;
  if (cfg.bounds.theta_norm_upper) overrides["theta_norm_upper"] = *cfg.bounds.theta_norm_upper;
  if (!overrides.empty()) bounds["overrides"] = overrides;
  doc["bounds"] = bounds;
  if (cfg.plan) {
    doc["plan"] = {{"zeta", cfg.plan->zeta},
                   {"epsilon", cfg.plan->epsilon},
                   {"epsilon_N", cfg.plan->epsilon_network},
                   {"search_horizon", cfg.plan->search_horizon}};
  }
  if (cfg.schedule) {
    doc["schedule"] = {{"zeta", cfg.schedule->zeta}, {"T", cfg.schedule->steps}, {"S", cfg.schedule->stop_time}};
  }
  doc["run"] = {{"horizon", cfg.run.horizon},
                {"runs", cfg.run.runs},
                {"seed", cfg.run.seed},
                {"writeback_mixed", cfg.run.writeback_mixed}};
  return doc;
}

WeightMatrix resolve_weights(const ExperimentConfig& cfg) {
  try {
    return WeightMatrix::validate(cfg.network.weights);
  } catch (const WeightValidationError& e) {
    throw ConfigError(cfg.network.topology.empty() ? "network.weights" : "network", e.what());
  }
}

BoundInputs bound_inputs(const ExperimentConfig& cfg) {
  BoundInputs in;
  in.sigma_x_lower = cfg.bounds.sigma_x_lower.value_or(cfg.model.sigma_x);
  in.sigma_x_upper = cfg.bounds.sigma_x_upper.value_or(cfg.model.sigma_x);
  in.sigma_eta_upper = cfg.bounds.sigma_eta_upper.value_or(cfg.model.sigma_eta);
  in.mu_hat_upper = cfg.bounds.mu_hat_upper.value_or(cfg.model.mu_hat());
  in.theta_norm_upper = cfg.bounds.theta_norm_upper.value_or(spectral_norm(cfg.model.theta));
  in.n = cfg.model.n;
  in.l = cfg.model.l;
  in.m = cfg.model.m;
  in.delta = cfg.bounds.delta;
  in.delta_hat = cfg.bounds.delta_hat;
  in.rho = resolve_weights(cfg).rho();
  try {
    in.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("bounds.overrides", e.what());
  }
  return in;
}

ResolvedSchedule resolve_schedule(const ExperimentConfig& cfg) {
  ResolvedSchedule out;
  if (cfg.schedule) {
    out.schedule = *cfg.schedule;
    return out;
  }
  const BoundInputs in = bound_inputs(cfg);
  const PlanSection& p = *cfg.plan;
  const StepPlan steps = plan_steps(in, p.zeta, p.epsilon_network);
  const StopPlan stop = plan_stop_time(in, p.zeta, steps.steps, p.epsilon, p.search_horizon);
  if (!stop.reachable) {
    throw std::runtime_error("epsilon = " + std::to_string(p.epsilon) + " not reachable within search horizon " +
                             std::to_string(p.search_horizon));
  }
  out.schedule.zeta = p.zeta;
  out.schedule.steps = steps.steps;
  out.schedule.stop_time = stop.stop_time;
  out.schedule.epsilon = p.epsilon;
  out.schedule.epsilon_network = p.epsilon_network;
  out.step_plan = steps;
  return out;
}

SimConfig make_sim_config(const ExperimentConfig& cfg, const Schedule& schedule, int parallel_runs) {
  SimConfig sim;
  sim.model = cfg.model;
  sim.weights = resolve_weights(cfg);
  sim.schedule = schedule;
  sim.horizon = cfg.run.horizon;
  sim.runs = cfg.run.runs;
  sim.seed = cfg.run.seed;
  sim.writeback_mixed = cfg.run.writeback_mixed;
  sim.parallel_runs = parallel_runs;
  try {
    sim.validate();
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    const auto colon = msg.find(':');
    throw ConfigError(colon == std::string::npos ? "run" : msg.substr(0, colon), msg);
  }
  return sim;
}

}  // namespace distls
