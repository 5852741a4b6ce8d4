#pragma once

// Closed-form finite-time error bounds for the local, pooled and
// communicated least-squares estimates, together with their burn-in times.
//
// All logarithms are natural. Denominators use the known lower bound on
// sigma_x and numerators use the known upper bounds, so every value stays an
// upper bound when only those scalar bounds are known.

#include <stdexcept>
#include <string>

namespace distls {

struct BoundInputs {
  double sigma_x_lower = 1.0;
  double sigma_x_upper = 1.0;
  double sigma_eta_upper = 0.0;
  double mu_hat_upper = 0.0;
  double theta_norm_upper = 0.0;
  int n = 1;
  int l = 1;
  int m = 1;
  double delta = 0.05;
  double delta_hat = 0.001;
  double rho = 0.0;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

enum class Confidence { Delta, DeltaHat };

struct BurnIn {
  double t1 = 0.0;
  double t2 = 0.0;
  double t3 = 0.0;
  double max() const;
};

enum class Regime { Local, Global, Communicated };

std::string to_string(Regime r);

struct BoundReport {
  Regime regime = Regime::Local;
  BurnIn burn_in;
  double C1 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
  double C0 = 0.0;
  double network_term = 0.0;  // rho^T C0, communicated regime only
  double noise_term = 0.0;
  double value = 0.0;
  long valid_from = 0;
};

/// Raised when a bound is evaluated before its burn-in time.
class BurnInError : public std::domain_error {
 public:
  BurnInError(long t, long valid_from)
      : std::domain_error("t = " + std::to_string(t) + " is below burn-in (valid from " +
                          std::to_string(valid_from) + ")"),
        valid_from_(valid_from) {}
  long valid_from() const { return valid_from_; }

 private:
  long valid_from_;
};

BurnIn burn_in(const BoundInputs& in, Confidence which);

/// Smallest integer t >= max(t1, t2, t3) (divided by m for the pooled regime).
long burn_in_start(const BoundInputs& in, Confidence which, bool pooled = false);

double noise_constant(const BoundInputs& in);            // C1 at delta
double statistic_growth_constant(const BoundInputs& in);  // c1
double noise_growth_constant(const BoundInputs& in);      // c2 at delta_hat
double inverse_deficit_constant(const BoundInputs& in);   // c3
double network_constant(const BoundInputs& in, double t, int steps);  // C0(t, T)

/// mu_bar_lambda_min is lambda_min(I + mu_bar); pass 1 when the means are unknown.
BoundReport local_bound(const BoundInputs& in, long t, double mu_bar_lambda_min = 1.0);
BoundReport global_bound(const BoundInputs& in, long t, double mu_bar_lambda_min = 1.0);
BoundReport comm_bound(const BoundInputs& in, long t, int steps, double mu_bar_lambda_min = 1.0);

}  // namespace distls
