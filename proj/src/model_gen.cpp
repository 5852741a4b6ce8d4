#include "distls/model_gen.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace distls {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t substream_key(std::uint64_t seed, std::uint64_t run, std::uint64_t agent, std::uint64_t t) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ run);
  h = splitmix64(h ^ (agent * 0xd6e8feb86659fd93ULL));
  return splitmix64(h ^ (t * 0xa0761d6478bd642fULL));
}

// Uniform in (0, 1): 53 random bits centred in their bucket, never 0 or 1.
double open_unit(std::uint64_t bits) {
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

double SeededStream::normal(std::uint64_t run, std::uint64_t agent, std::uint64_t t, std::uint64_t k) const {
  const std::uint64_t key = substream_key(seed_, run, agent, t);
  const double u1 = open_unit(splitmix64(key + 2 * k));
  const double u2 = open_unit(splitmix64(key + 2 * k + 1));
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

void SeededStream::normals(std::uint64_t run, std::uint64_t agent, std::uint64_t t, std::span<double> out) const {
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = normal(run, agent, t, k);
  }
}

void ModelSpec::validate() const {
  require(n >= 1, "model.n: must be >= 1");
  require(l >= 1, "model.l: must be >= 1");
  require(m >= 1, "model.m: must be >= 1");
  require(theta.rows() == l && theta.cols() == n, "model.theta: expected an l x n matrix");
  require(std::isfinite(sigma_x) && sigma_x > 0.0, "model.sigma_x: must be positive");
  require(std::isfinite(sigma_eta) && sigma_eta >= 0.0, "model.sigma_eta: must be nonnegative");
  if (const auto* c = std::get_if<ConstantMean>(&mean_schedule)) {
    require(static_cast<int>(c->means.size()) == m, "model.mean_schedule.means: need one vector per agent");
    for (const auto& v : c->means) {
      require(v.size() == n, "model.mean_schedule.means: vector length must equal n");
    }
  } else if (const auto* s = std::get_if<SinusoidMean>(&mean_schedule)) {
    require(static_cast<int>(s->amplitudes.size()) == m,
            "model.mean_schedule.amplitudes: need one vector per agent");
    require(static_cast<int>(s->periods.size()) == m, "model.mean_schedule.periods: need one period per agent");
    for (const auto& v : s->amplitudes) {
      require(v.size() == n, "model.mean_schedule.amplitudes: vector length must equal n");
    }
    for (double p : s->periods) {
      require(std::isfinite(p) && p > 0.0, "model.mean_schedule.periods: must be positive");
    }
  }
}

Vector ModelSpec::mean(int agent, long t) const {
  if (const auto* c = std::get_if<ConstantMean>(&mean_schedule)) {
    return c->means.at(agent);
  }
  if (const auto* s = std::get_if<SinusoidMean>(&mean_schedule)) {
    const double phase = 2.0 * std::numbers::pi * static_cast<double>(t) / s->periods.at(agent);
    return s->amplitudes.at(agent) * std::cos(phase);
  }
  return Vector::Zero(n);
}

double ModelSpec::mu_hat() const {
  double best = 0.0;
  if (const auto* c = std::get_if<ConstantMean>(&mean_schedule)) {
    for (const auto& v : c->means) best = std::max(best, v.norm());
  } else if (const auto* s = std::get_if<SinusoidMean>(&mean_schedule)) {
    // |cos| reaches 1 only when t is a multiple of period/2; the amplitude is
    // still the supremum the bounds must assume.
    for (const auto& v : s->amplitudes) best = std::max(best, v.norm());
  }
  return best;
}

DataPair sample_pair(const ModelSpec& spec, const SeededStream& stream, std::uint64_t run, int agent, long t) {
  std::vector<double> z(static_cast<std::size_t>(spec.n + spec.l));
  stream.normals(run, static_cast<std::uint64_t>(agent), static_cast<std::uint64_t>(t), z);
  DataPair out;
  out.agent = agent;
  out.time = t;
  const Eigen::Map<const Vector> zx(z.data(), spec.n);
  const Eigen::Map<const Vector> ze(z.data() + spec.n, spec.l);
  out.x = spec.mean(agent, t) + spec.sigma_x * zx;
  out.y = spec.theta * out.x + spec.sigma_eta * ze;
  return out;
}

Matrix mu_bar(const ModelSpec& spec, int agent, long t) {
  Matrix acc = Matrix::Zero(spec.n, spec.n);
  if (std::holds_alternative<ZeroMean>(spec.mean_schedule)) return acc;
  for (long j = 1; j <= t; ++j) {
    const Vector mu = spec.mean(agent, j);
    acc.noalias() += mu * mu.transpose();
  }
  return acc * (4.0 / (static_cast<double>(t) * spec.sigma_x * spec.sigma_x));
}

Matrix mu_bar_pooled(const ModelSpec& spec, long t) {
  Matrix acc = Matrix::Zero(spec.n, spec.n);
  for (int i = 0; i < spec.m; ++i) acc += mu_bar(spec, i, t);
  return acc / static_cast<double>(spec.m);
}

double lambda_min_shifted(const Matrix& mu_bar) {
  const Matrix shifted = Matrix::Identity(mu_bar.rows(), mu_bar.cols()) + mu_bar;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(shifted, Eigen::EigenvaluesOnly);
  return eig.eigenvalues()(0);
}

DifferencedStream difference_transform(std::span<const DataPair> pairs) {
  DifferencedStream out;
  if (pairs.size() < 2) {
    out.too_short = true;
    return out;
  }
  out.pairs.reserve(pairs.size() / 2);
  for (std::size_t k = 0; k + 1 < pairs.size(); k += 2) {
    DataPair d;
    d.x = pairs[k].x - pairs[k + 1].x;
    d.y = pairs[k].y - pairs[k + 1].y;
    d.agent = pairs[k].agent;
    d.time = static_cast<long>(k / 2 + 1);
    out.pairs.push_back(std::move(d));
  }
  return out;
}

}  // namespace distls
