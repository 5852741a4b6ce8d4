#include "distls/bounds.hpp"

#include <algorithm>
#include <cmath>

namespace distls {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

double m32(const BoundInputs& in) { return std::pow(static_cast<double>(in.m), 1.5); }

double sx2_lower(const BoundInputs& in) { return in.sigma_x_lower * in.sigma_x_lower; }

}  // namespace

void BoundInputs::validate() const {
  require(std::isfinite(sigma_x_lower) && sigma_x_lower > 0.0, "bounds.sigma_x_lower: must be positive");
  require(std::isfinite(sigma_x_upper) && sigma_x_upper >= sigma_x_lower,
          "bounds.sigma_x_upper: must be >= sigma_x_lower");
  require(std::isfinite(sigma_eta_upper) && sigma_eta_upper >= 0.0, "bounds.sigma_eta_upper: must be >= 0");
  require(std::isfinite(mu_hat_upper) && mu_hat_upper >= 0.0, "bounds.mu_hat_upper: must be >= 0");
  require(std::isfinite(theta_norm_upper) && theta_norm_upper >= 0.0, "bounds.theta_norm_upper: must be >= 0");
  require(n >= 1 && l >= 1 && m >= 1, "bounds: dimensions must be >= 1");
  require(delta > 0.0 && delta < 1.0, "bounds.delta: must lie in (0, 1)");
  require(delta_hat > 0.0 && delta_hat < 1.0, "bounds.delta_hat: must lie in (0, 1)");
  require(rho >= 0.0 && rho < 1.0, "bounds.rho: must lie in [0, 1)");
}

double BurnIn::max() const { return std::max({t1, t2, t3}); }

std::string to_string(Regime r) {
  switch (r) {
    case Regime::Local:
      return "local";
    case Regime::Global:
      return "global";
    case Regime::Communicated:
      return "communicated";
  }
  return "unknown";
}

BurnIn burn_in(const BoundInputs& in, Confidence which) {
  const double d = which == Confidence::Delta ? in.delta : in.delta_hat;
  BurnIn b;
  b.t1 = 8.0 * in.n + 16.0 * std::log(2.0 / d);
  const double root =
      16.0 * in.mu_hat_upper * (std::sqrt(4.0 * in.n) + std::sqrt(2.0 * std::log(2.0 / d))) / in.sigma_x_lower;
  b.t2 = root * root;
  b.t3 = 2.0 * (in.n + in.l) * std::log(1.0 / d);
  return b;
}

long burn_in_start(const BoundInputs& in, Confidence which, bool pooled) {
  double need = burn_in(in, which).max();
  if (pooled) need /= in.m;
  return std::max(1L, static_cast<long>(std::ceil(need)));
}

double noise_constant(const BoundInputs& in) {
  const double d = in.delta;
  return 8.0 * in.sigma_eta_upper *
         (4.0 * in.sigma_x_upper * std::sqrt((in.n + in.l) * std::log(9.0 / d)) +
          in.mu_hat_upper * (std::sqrt(2.0 * (in.l + in.n)) + 2.0 * std::sqrt(std::log(2.0 / d))));
}

double statistic_growth_constant(const BoundInputs& in) {
  return in.theta_norm_upper * (19.0 / 8.0 * in.sigma_x_upper * in.sigma_x_upper + in.mu_hat_upper * in.mu_hat_upper);
}

double noise_growth_constant(const BoundInputs& in) {
  const double d = in.delta_hat;
  return in.sigma_eta_upper *
         (4.0 * in.sigma_x_upper * std::sqrt((in.n + in.l) * std::log(9.0 / d)) +
          in.mu_hat_upper * (std::sqrt(2.0 * (in.l + in.n)) + std::sqrt(2.0 * std::log(2.0 / d))));
}

double inverse_deficit_constant(const BoundInputs& in) {
  const double s2 = sx2_lower(in);
  const double root5n = std::sqrt(5.0 * in.n);
  return 152.0 * m32(in) * root5n / s2 + 64.0 * m32(in) * root5n * in.mu_hat_upper * in.mu_hat_upper / (s2 * s2);
}

double network_constant(const BoundInputs& in, double t, int steps) {
  const double growth = statistic_growth_constant(in) + noise_growth_constant(in) / std::sqrt(t);
  const double c3 = inverse_deficit_constant(in);
  const double spread = m32(in) * std::sqrt(static_cast<double>(in.l));
  return c3 * growth + 8.0 * spread * growth / sx2_lower(in) + std::pow(in.rho, steps) * spread * c3 * growth;
}

namespace {

BoundReport noise_report(const BoundInputs& in, long t, double lambda_min, Regime regime, bool pooled) {
  in.validate();
  if (!(lambda_min >= 1.0)) throw std::invalid_argument("mu_bar_lambda_min must be >= 1");
  BoundReport r;
  r.regime = regime;
  r.burn_in = burn_in(in, Confidence::Delta);
  r.valid_from = burn_in_start(in, Confidence::Delta, pooled);
  if (t < r.valid_from) throw BurnInError(t, r.valid_from);
  r.C1 = noise_constant(in);
  const double samples = pooled ? static_cast<double>(in.m) * t : static_cast<double>(t);
  r.noise_term = r.C1 / (std::sqrt(samples) * sx2_lower(in) * lambda_min);
  r.value = r.noise_term;
  return r;
}

}  // namespace

BoundReport local_bound(const BoundInputs& in, long t, double mu_bar_lambda_min) {
  return noise_report(in, t, mu_bar_lambda_min, Regime::Local, false);
}

BoundReport global_bound(const BoundInputs& in, long t, double mu_bar_lambda_min) {
  return noise_report(in, t, mu_bar_lambda_min, Regime::Global, true);
}

BoundReport comm_bound(const BoundInputs& in, long t, int steps, double mu_bar_lambda_min) {
  in.validate();
  if (steps < 1) throw std::invalid_argument("comm_bound: T must be >= 1");
  if (!(mu_bar_lambda_min >= 1.0)) throw std::invalid_argument("mu_bar_lambda_min must be >= 1");
  BoundReport r;
  r.regime = Regime::Communicated;
  r.burn_in = burn_in(in, Confidence::DeltaHat);
  r.valid_from = burn_in_start(in, Confidence::DeltaHat);
  if (t < r.valid_from) throw BurnInError(t, r.valid_from);
  r.C1 = noise_constant(in);
  r.c1 = statistic_growth_constant(in);
  r.c2 = noise_growth_constant(in);
  r.c3 = inverse_deficit_constant(in);
  r.C0 = network_constant(in, static_cast<double>(t), steps);
  r.network_term = std::pow(in.rho, steps) * r.C0;
  r.noise_term = r.C1 / (std::sqrt(static_cast<double>(in.m) * t) * sx2_lower(in) * mu_bar_lambda_min);
  r.value = r.network_term + r.noise_term;
  return r;
}

}  // namespace distls
