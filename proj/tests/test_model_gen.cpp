#include <doctest.h>

#include <cmath>
#include <numbers>

#include "distls/model_gen.hpp"

using namespace distls;

namespace {

ModelSpec reference_model() {
  ModelSpec s;
  s.theta = Matrix{{1.6, 0.3}, {0.8, 0.3}};
  s.sigma_x = 3.0;
  s.sigma_eta = 1.0;
  s.n = 2;
  s.l = 2;
  s.m = 6;
  return s;
}

}  // namespace

TEST_CASE("noiseless model returns y = Theta x exactly") {
  ModelSpec s = reference_model();
  s.sigma_eta = 0.0;
  const SeededStream stream(5);
  for (long t = 1; t <= 50; ++t) {
    const DataPair p = sample_pair(s, stream, 0, 3, t);
    const Vector expected = s.theta * p.x;
    CHECK(p.y == expected);
    CHECK(p.agent == 3);
    CHECK(p.time == t);
  }
}

TEST_CASE("zero map with no noise gives zero labels") {
  ModelSpec s = reference_model();
  s.sigma_eta = 0.0;
  s.theta.setZero();
  const SeededStream stream(9);
  for (long t = 1; t <= 20; ++t) {
    CHECK(sample_pair(s, stream, 1, 0, t).y.isZero(0.0));
  }
}

TEST_CASE("draws are reproducible and independent of generation order") {
  const ModelSpec s = reference_model();
  const SeededStream a(42);
  const SeededStream b(42);
  std::vector<DataPair> forward;
  for (long t = 1; t <= 30; ++t) forward.push_back(sample_pair(s, a, 2, 4, t));
  for (long t = 30; t >= 1; --t) {
    const DataPair p = sample_pair(s, b, 2, 4, t);
    CHECK(p.x == forward[t - 1].x);
    CHECK(p.y == forward[t - 1].y);
  }
  const SeededStream other(43);
  CHECK(sample_pair(s, other, 2, 4, 1).x != forward[0].x);
  CHECK(sample_pair(s, a, 3, 4, 1).x != forward[0].x);
  CHECK(sample_pair(s, a, 2, 5, 1).x != forward[0].x);
}

TEST_CASE("feature covariance matches sigma_x^2 I within 2% of 9") {
  const ModelSpec s = reference_model();
  const SeededStream stream(2021);
  constexpr int kDraws = 100000;
  Vector mean = Vector::Zero(2);
  Matrix second = Matrix::Zero(2, 2);
  for (int k = 0; k < kDraws; ++k) {
    const DataPair p = sample_pair(s, stream, 0, k % 6, k / 6 + 1);
    mean += p.x;
    second += p.x * p.x.transpose();
  }
  mean /= kDraws;
  const Matrix cov = second / kDraws - mean * mean.transpose();
  CHECK(std::abs(cov(0, 0) - 9.0) <= 0.02 * 9.0);
  CHECK(std::abs(cov(1, 1) - 9.0) <= 0.02 * 9.0);
  CHECK(std::abs(cov(0, 1)) <= 0.02 * 9.0);
  // Zero-mean moment check: ||mean|| <= 4 sigma_x sqrt(n / N).
  CHECK(mean.norm() <= 4.0 * 3.0 * std::sqrt(2.0 / kDraws));
}

TEST_CASE("noise has the configured scale and distinct agents are uncorrelated") {
  const ModelSpec s = reference_model();
  const SeededStream stream(77);
  constexpr int kDraws = 20000;
  double noise_sq = 0.0;
  double cross = 0.0;
  for (int t = 1; t <= kDraws; ++t) {
    const DataPair p0 = sample_pair(s, stream, 0, 0, t);
    const DataPair p1 = sample_pair(s, stream, 0, 1, t);
    noise_sq += (p0.y - s.theta * p0.x).squaredNorm();
    cross += p0.x(0) * p1.x(0);
  }
  const double noise_var = noise_sq / (2.0 * kDraws);
  CHECK(noise_var == doctest::Approx(1.0).epsilon(0.05));
  const double corr = cross / kDraws / 9.0;
  CHECK(std::abs(corr) <= 4.0 / std::sqrt(double(kDraws)));
}

TEST_CASE("mu_bar for the three mean schedules") {
  ModelSpec s = reference_model();
  SUBCASE("zero schedule gives zero and lambda_min(I + mu_bar) = 1") {
    const Matrix mb = mu_bar(s, 0, 25);
    CHECK(mb.isZero(0.0));
    CHECK(lambda_min_shifted(mb) == doctest::Approx(1.0));
    CHECK(s.mu_hat() == 0.0);
  }
  SUBCASE("constant schedule is independent of t") {
    ConstantMean c;
    for (int i = 0; i < s.m; ++i) c.means.push_back(Vector{{0.5 * i, -1.0}});
    s.mean_schedule = c;
    const Vector v = c.means[3];
    const Matrix expected = (4.0 / 9.0) * v * v.transpose();
    for (long t : {1L, 7L, 100L}) CHECK((mu_bar(s, 3, t) - expected).norm() <= 1e-12);
    CHECK(s.mu_hat() == doctest::Approx(Vector{{2.5, -1.0}}.norm()));
    // lambda_min(I + c v v^T) = 1 when n > 1.
    CHECK(lambda_min_shifted(mu_bar(s, 3, 10)) == doctest::Approx(1.0));
  }
  SUBCASE("sinusoid, n = 1, period 2, t = 2 gives 4 a^2 / sigma_x^2") {
    ModelSpec one;
    one.theta = Matrix{{2.0}};
    one.n = one.l = one.m = 1;
    one.sigma_x = 3.0;
    const double a = 1.7;
    one.mean_schedule = SinusoidMean{{Vector{{a}}}, {2.0}};
    // Direct summation oracle: mu_j = a cos(pi j).
    double sum = 0.0;
    for (int j = 1; j <= 2; ++j) sum += std::pow(a * std::cos(std::numbers::pi * j), 2);
    const double oracle = 4.0 / (2.0 * 9.0) * sum;
    CHECK(oracle == doctest::Approx(4.0 * a * a / 9.0));
    CHECK(mu_bar(one, 0, 2)(0, 0) == doctest::Approx(oracle).epsilon(1e-12));
    CHECK(one.mu_hat() == doctest::Approx(a));
  }
  SUBCASE("pooled variant averages the agents") {
    ConstantMean c;
    for (int i = 0; i < s.m; ++i) c.means.push_back(Vector{{double(i), 0.0}});
    s.mean_schedule = c;
    Matrix expected = Matrix::Zero(2, 2);
    for (int i = 0; i < s.m; ++i) expected(0, 0) += 4.0 * i * i / 9.0;
    expected /= s.m;
    CHECK((mu_bar_pooled(s, 5) - expected).norm() <= 1e-12);
  }
}

TEST_CASE("non-zero mean shifts the feature draws") {
  ModelSpec s = reference_model();
  ConstantMean c;
  for (int i = 0; i < s.m; ++i) c.means.push_back(Vector{{5.0, -2.0}});
  s.mean_schedule = c;
  const SeededStream stream(3);
  Vector mean = Vector::Zero(2);
  constexpr int kDraws = 10000;
  for (int t = 1; t <= kDraws; ++t) mean += sample_pair(s, stream, 0, 2, t).x;
  mean /= kDraws;
  CHECK((mean - Vector{{5.0, -2.0}}).norm() <= 4.0 * 3.0 * std::sqrt(2.0 / kDraws));
}

TEST_CASE("difference transform") {
  DataPair p{Vector{{1.0, 2.0}}, Vector{{3.0}}, 0, 1};
  DataPair q{Vector{{0.5, -1.0}}, Vector{{4.0}}, 0, 2};

  SUBCASE("identical pairs difference to zero") {
    const std::vector<DataPair> in{p, p};
    const auto out = difference_transform(in);
    REQUIRE(out.pairs.size() == 1);
    CHECK(out.pairs[0].x.isZero(0.0));
    CHECK(out.pairs[0].y.isZero(0.0));
    CHECK_FALSE(out.too_short);
  }
  SUBCASE("definition on two pairs") {
    const std::vector<DataPair> in{p, q};
    const auto out = difference_transform(in);
    REQUIRE(out.pairs.size() == 1);
    CHECK(out.pairs[0].x == Vector{{0.5, 3.0}});
    CHECK(out.pairs[0].y == Vector{{-1.0}});
    CHECK(out.pairs[0].time == 1);
  }
  SUBCASE("odd length drops the last sample") {
    const std::vector<DataPair> in{p, q, p, q, p};
    CHECK(difference_transform(in).pairs.size() == 2);
  }
  SUBCASE("short input is flagged") {
    const std::vector<DataPair> one{p};
    const auto out = difference_transform(one);
    CHECK(out.pairs.empty());
    CHECK(out.too_short);
    CHECK(difference_transform(std::span<const DataPair>{}).too_short);
  }
}

TEST_CASE("difference transform removes a constant mean and keeps the model") {
  ModelSpec s = reference_model();
  ConstantMean c;
  for (int i = 0; i < s.m; ++i) c.means.push_back(Vector{{4.0, -3.0}});
  s.mean_schedule = c;
  const SeededStream stream(11);
  constexpr int kInputs = 20000;
  std::vector<DataPair> pairs;
  for (int t = 1; t <= kInputs; ++t) pairs.push_back(sample_pair(s, stream, 0, 1, t));
  const auto out = difference_transform(pairs);
  REQUIRE(out.pairs.size() == kInputs / 2);

  Vector mean = Vector::Zero(2);
  for (std::size_t k = 0; k < out.pairs.size(); ++k) {
    const auto& d = out.pairs[k];
    mean += d.x;
    // eta_hat = eta_{2k-1} - eta_{2k}, with eta recovered from the inputs.
    const Vector eta_hat = (pairs[2 * k].y - s.theta * pairs[2 * k].x) - (pairs[2 * k + 1].y - s.theta * pairs[2 * k + 1].x);
    CHECK((d.y - (s.theta * d.x + eta_hat)).norm() <= 1e-12 * (1.0 + d.y.norm()));
  }
  mean /= double(out.pairs.size());
  // Three standard errors per component; each component has std sqrt(2) sigma_x.
  const double se = std::sqrt(2.0) * 3.0 / std::sqrt(double(out.pairs.size()));
  CHECK(std::abs(mean(0)) <= 3.0 * se);
  CHECK(std::abs(mean(1)) <= 3.0 * se);
}

TEST_CASE("model validation rejects bad specs") {
  ModelSpec s = reference_model();
  CHECK_NOTHROW(s.validate());
  ModelSpec bad = s;
  bad.sigma_x = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = s;
  bad.sigma_eta = -1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = s;
  bad.theta = Matrix::Zero(3, 2);
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = s;
  bad.mean_schedule = ConstantMean{{Vector::Zero(2)}};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
