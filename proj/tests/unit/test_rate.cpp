#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "noma/rate.hpp"
#include "noma/rng.hpp"

using namespace noma;

TEST_CASE("allocation rules produce the documented shares") {
  const PowerAllocation lin2 = PowerAllocation::linear_rule(2);
  CHECK(lin2.coefficient(1) == 2.0 / 3.0);
  CHECK(lin2.coefficient(2) == 1.0 / 3.0);

  const PowerAllocation lin3 = PowerAllocation::linear_rule(3);
  CHECK(lin3.coefficient(1) == 3.0 / 6.0);
  CHECK(lin3.coefficient(2) == 2.0 / 6.0);
  CHECK(lin3.coefficient(3) == 1.0 / 6.0);

  const PowerAllocation uni4 = PowerAllocation::uniform(4);
  for (int k = 1; k <= 4; ++k) CHECK(uni4.coefficient(k) == 0.25);
}

TEST_CASE("residual interference is the tail sum and vanishes at the last position") {
  const PowerAllocation lin3 = PowerAllocation::linear_rule(3);
  CHECK(lin3.residual_interference(3) == 0.0);
  CHECK(lin3.residual_interference(2) == 1.0 / 6.0);
  CHECK(lin3.residual_interference(1) == 1.0 / 6.0 + 2.0 / 6.0);

  const PowerAllocation uni4 = PowerAllocation::uniform(4);
  CHECK(uni4.residual_interference(1) == 0.75);
  CHECK(uni4.residual_interference(4) == 0.0);
}

TEST_CASE("allocation coefficients are validated on construction") {
  CHECK_THROWS_AS(PowerAllocation::from_coefficients({}), std::domain_error);
  CHECK_THROWS_AS(PowerAllocation::from_coefficients({0.6, 0.5}), std::domain_error);
  CHECK_THROWS_AS(PowerAllocation::from_coefficients({1.5, -0.5}), std::domain_error);
  CHECK_THROWS_AS(PowerAllocation::linear_rule(0), std::domain_error);
  CHECK_NOTHROW(PowerAllocation::from_coefficients({0.0, 0.0, 1.0}));

  const PowerAllocation lin3 = PowerAllocation::linear_rule(3);
  CHECK_THROWS_AS(lin3.coefficient(0), std::domain_error);
  CHECK_THROWS_AS(lin3.coefficient(4), std::domain_error);
  CHECK_THROWS_AS(lin3.residual_interference(0), std::domain_error);
}

TEST_CASE("users are ordered by ascending gain, ties kept stable") {
  CHECK(order_users({0.5, 0.1, 0.9}) == std::vector<int>{1, 0, 2});
  CHECK(order_users({0.3, 0.3}) == std::vector<int>{0, 1});
  CHECK(order_users({7.0}) == std::vector<int>{0});
  CHECK_THROWS_AS(order_users({}), std::domain_error);
}

TEST_CASE("two-user rates at a hand-computed operating point") {
  // rho*g is 4 at the weak user and 6 at the strong one; with shares
  // (2/3, 1/3) the positions decode at log2(15/7) and log2(3).
  const PowerAllocation lin2 = PowerAllocation::linear_rule(2);
  const RateReport report = sum_rate({2.0, 3.0}, 2.0, lin2);
  CHECK(report.per_user[0] == doctest::Approx(1.0995356735509143).epsilon(1e-14));
  CHECK(report.per_user[1] == doctest::Approx(1.5849625007211561).epsilon(1e-14));
  CHECK(report.sum == doctest::Approx(2.6844981742720702).epsilon(1e-14));
}

TEST_CASE("a single user keeps the full point-to-point rate") {
  Rng rng(77);
  const PowerAllocation one = PowerAllocation::uniform(1);
  for (int i = 0; i < 200; ++i) {
    const double g = 0.01 + 5.0 * rng.uniform01();
    const double rho = 0.1 + 100.0 * rng.uniform01();
    const double rg = rho * g;
    CHECK(sum_rate({g}, rho, one).sum == std::log2(1.0 + rg));
  }
}

TEST_CASE("giving the whole budget to the strongest user silences the rest") {
  Rng rng(78);
  const PowerAllocation last = PowerAllocation::from_coefficients({0.0, 0.0, 0.0, 1.0});
  for (int i = 0; i < 200; ++i) {
    std::vector<double> gains(4);
    for (double& g : gains) g = 0.01 + 5.0 * rng.uniform01();
    const double rho = 0.1 + 100.0 * rng.uniform01();
    const RateReport report = sum_rate(gains, rho, last);
    CHECK(report.per_user[0] == 0.0);
    CHECK(report.per_user[1] == 0.0);
    CHECK(report.per_user[2] == 0.0);
    const double top = std::max(std::max(gains[0], gains[1]), std::max(gains[2], gains[3]));
    CHECK(report.per_user[3] == std::log2(1.0 + rho * top));
  }
}

TEST_CASE("rates scale-invariantly when gains and snr trade places") {
  Rng rng(79);
  const PowerAllocation lin3 = PowerAllocation::linear_rule(3);
  for (int i = 0; i < 200; ++i) {
    std::vector<double> gains(3);
    for (double& g : gains) g = 0.01 + 5.0 * rng.uniform01();
    const double rho = 0.1 + 100.0 * rng.uniform01();
    const double c = 0.1 + 10.0 * rng.uniform01();
    std::vector<double> scaled = gains;
    for (double& g : scaled) g *= c;
    const double a = sum_rate(gains, rho, lin3).sum;
    const double b = sum_rate(scaled, rho / c, lin3).sum;
    CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)));
  }
}

TEST_CASE("per-position rates grow with the decoded gain") {
  Rng rng(80);
  const PowerAllocation lin3 = PowerAllocation::linear_rule(3);
  for (int i = 0; i < 500; ++i) {
    const int k = 1 + static_cast<int>(rng.next_u64() % 3);
    const double rho = 0.1 + 100.0 * rng.uniform01();
    const double low = 0.01 + 5.0 * rng.uniform01();
    const double high = low * (1.0 + 0.1 + rng.uniform01());
    CHECK(sic_rate(k, low, rho, lin3) < sic_rate(k, high, rho, lin3));
  }
}

TEST_CASE("equal gains telescope to the single-user rate for any allocation") {
  Rng rng(81);
  for (int i = 0; i < 200; ++i) {
    const int K = 2 + static_cast<int>(rng.next_u64() % 5);
    std::vector<double> gamma(static_cast<std::size_t>(K));
    double total = 0.0;
    for (double& g : gamma) {
      g = 0.01 + rng.uniform01();
      total += g;
    }
    for (double& g : gamma) g /= total;
    const PowerAllocation alloc = PowerAllocation::from_coefficients(gamma);
    const double g = 0.01 + 5.0 * rng.uniform01();
    const double rho = 0.1 + 100.0 * rng.uniform01();
    const std::vector<double> gains(static_cast<std::size_t>(K), g);
    const double sum = sum_rate(gains, rho, alloc).sum;
    const double direct = std::log2(1.0 + rho * g);
    CHECK(std::abs(sum - direct) <= 1e-12 * std::max(1.0, direct));
  }
}

TEST_CASE("sic_rate validates its inputs") {
  const PowerAllocation lin2 = PowerAllocation::linear_rule(2);
  CHECK_THROWS_AS(sic_rate(1, -0.1, 1.0, lin2), std::domain_error);
  CHECK_THROWS_AS(sic_rate(1, 1.0, 0.0, lin2), std::domain_error);
  CHECK_THROWS_AS(sic_rate(3, 1.0, 1.0, lin2), std::domain_error);
  CHECK_THROWS_AS(sum_rate({1.0}, 1.0, lin2), std::domain_error);
}

TEST_CASE("effective gains reduce antennas by maximum or by sum") {
  ChannelRealization real;
  real.M = 2;
  real.K = 2;
  real.gains = {1.0, 3.0, 5.0, 2.0};
  const std::vector<double> strongest = effective_gains(real, EffectiveGainRule::MaxAntenna);
  CHECK(strongest == std::vector<double>{3.0, 5.0});
  const std::vector<double> pooled = effective_gains(real, EffectiveGainRule::SumAntennas);
  CHECK(pooled == std::vector<double>{4.0, 7.0});
}

TEST_CASE("realization rates agree with the scalar-gain path") {
  SystemConfig c;
  c.M = 4;
  c.K = 3;
  c.R_D = 10.0;
  c.alpha = 2.0;
  c.rho = 10.0;
  c.seed = 12;
  Rng rng(12);
  const std::vector<double> d = sample_placement(c, rng);
  const ChannelRealization real = sample_channel(c, d, rng);
  const PowerAllocation lin3 = PowerAllocation::linear_rule(3);
  for (const EffectiveGainRule rule : {EffectiveGainRule::MaxAntenna, EffectiveGainRule::SumAntennas}) {
    const RateReport direct = sum_rate(real, c.rho, lin3, rule);
    const RateReport via_gains = sum_rate(effective_gains(real, rule), c.rho, lin3);
    CHECK(direct.sum == via_gains.sum);
    CHECK(direct.per_user == via_gains.per_user);
  }
}
