#pragma once

// Streaming data model y = Theta x + eta with Gaussian features and noise,
// drawn from a counter-based random stream so that every (run, agent, t)
// triple maps to a fixed draw regardless of generation order.

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "distls/linalg.hpp"

namespace distls {

struct ZeroMean {};

/// mu_{i,t} = means[i] for every t.
struct ConstantMean {
  std::vector<Vector> means;
};

/// mu_{i,t} = amplitudes[i] * cos(2 pi t / periods[i]).
struct SinusoidMean {
  std::vector<Vector> amplitudes;
  std::vector<double> periods;
};

using MeanSchedule = std::variant<ZeroMean, ConstantMean, SinusoidMean>;

struct ModelSpec {
  Matrix theta;  // l x n
  double sigma_x = 1.0;
  double sigma_eta = 0.0;
  MeanSchedule mean_schedule = ZeroMean{};
  int n = 1;
  int l = 1;
  int m = 1;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;

  /// Mean of agent `agent` (0-based) at step t >= 1.
  Vector mean(int agent, long t) const;

  /// sup over agents and time of ||mu_{i,t}||, in closed form from the schedule.
  double mu_hat() const;
};

struct DataPair {
  Vector x;
  Vector y;
  int agent = 0;
  long time = 1;
};

/// Counter-based Gaussian source keyed by (master seed, run, agent, t).
class SeededStream {
 public:
  explicit SeededStream(std::uint64_t master_seed) : seed_(master_seed) {}

  std::uint64_t seed() const { return seed_; }

  /// The k-th standard normal of the substream for (run, agent, t).
  double normal(std::uint64_t run, std::uint64_t agent, std::uint64_t t, std::uint64_t k) const;

  /// Fills `out` with consecutive standard normals k = 0..size-1.
  void normals(std::uint64_t run, std::uint64_t agent, std::uint64_t t, std::span<double> out) const;

 private:
  std::uint64_t seed_;
};

/// Draws x ~ N(mu_{agent,t}, sigma_x^2 I), eta ~ N(0, sigma_eta^2 I) and returns (x, Theta x + eta).
DataPair sample_pair(const ModelSpec& spec, const SeededStream& stream, std::uint64_t run, int agent, long t);

/// (4 / (t sigma_x^2)) * sum_{j=1..t} mu_{agent,j} mu_{agent,j}^T
Matrix mu_bar(const ModelSpec& spec, int agent, long t);

/// Pooled variant (4 / (m t sigma_x^2)) * sum_i sum_j mu_{i,j} mu_{i,j}^T.
Matrix mu_bar_pooled(const ModelSpec& spec, long t);

/// lambda_min(I + mu_bar) for a symmetric mu_bar.
double lambda_min_shifted(const Matrix& mu_bar);

struct DifferencedStream {
  std::vector<DataPair> pairs;
  /// Set when the input had fewer than two pairs.
  bool too_short = false;
};

/// Pairs consecutive samples into (x_{2t-1} - x_{2t}, y_{2t-1} - y_{2t}), removing
/// any mean that is constant over the pair. Output length is floor(input / 2).
DifferencedStream difference_transform(std::span<const DataPair> pairs);

}  // namespace distls
