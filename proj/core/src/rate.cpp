#include "noma/rate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "noma/format.hpp"

namespace noma {

namespace {

constexpr double kSumTolerance = 1e-12;

}  // namespace

PowerAllocation PowerAllocation::from_coefficients(std::vector<double> gamma) {
  if (gamma.empty()) throw std::domain_error("power allocation: at least one coefficient required");
  double sum = 0.0;
  for (const double g : gamma) {
    if (!(g >= 0.0)) {
      throw std::domain_error("power allocation: coefficients must be >= 0, got " + fmt_g17(g));
    }
    sum += g;
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw std::domain_error("power allocation: coefficients must sum to 1 within 1e-12, got " +
                            fmt_g17(sum));
  }
  PowerAllocation alloc;
  alloc.gamma_ = std::move(gamma);
  const int K = alloc.size();
  alloc.tail_.assign(static_cast<std::size_t>(K) + 1, 0.0);
  for (int k = K - 1; k >= 0; --k) alloc.tail_[k] = alloc.tail_[k + 1] + alloc.gamma_[k];
  return alloc;
}

PowerAllocation PowerAllocation::linear_rule(int K) {
  if (K < 1) throw std::domain_error("power allocation: K must be >= 1, got " + std::to_string(K));
  std::vector<double> gamma(static_cast<std::size_t>(K));
  const double total = 0.5 * K * (K + 1);
  for (int k = 1; k <= K; ++k) gamma[k - 1] = (K - k + 1) / total;
  return from_coefficients(std::move(gamma));
}

PowerAllocation PowerAllocation::uniform(int K) {
  if (K < 1) throw std::domain_error("power allocation: K must be >= 1, got " + std::to_string(K));
  return from_coefficients(std::vector<double>(static_cast<std::size_t>(K), 1.0 / K));
}

double PowerAllocation::coefficient(int k) const {
  if (k < 1 || k > size()) {
    throw std::domain_error("power allocation: position k must be in [1, " +
                            std::to_string(size()) + "], got " + std::to_string(k));
  }
  return gamma_[static_cast<std::size_t>(k) - 1];
}

double PowerAllocation::residual_interference(int k) const {
  if (k < 1 || k > size()) {
    throw std::domain_error("power allocation: position k must be in [1, " +
                            std::to_string(size()) + "], got " + std::to_string(k));
  }
  return tail_[static_cast<std::size_t>(k)];
}

std::vector<int> order_users(const std::vector<double>& gains) {
  if (gains.empty()) throw std::domain_error("order_users: empty gain list");
  std::vector<int> perm(gains.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(),
                   [&gains](int a, int b) { return gains[a] < gains[b]; });
  return perm;
}

double sic_rate(int k, double gain, double rho, const PowerAllocation& alloc) {
  if (!(gain >= 0.0)) throw std::domain_error("sic_rate: gain must be >= 0, got " + fmt_g17(gain));
  if (!(rho > 0.0)) throw std::domain_error("sic_rate: rho must be positive, got " + fmt_g17(rho));
  const double share = alloc.coefficient(k);
  const double tail = alloc.residual_interference(k);
  const double rg = rho * gain;
  return std::log2(1.0 + rg * share / (rg * tail + 1.0));
}

RateReport sum_rate(const std::vector<double>& gains, double rho, const PowerAllocation& alloc) {
  if (gains.size() != static_cast<std::size_t>(alloc.size())) {
    throw std::domain_error("sum_rate: got " + std::to_string(gains.size()) + " gains for " +
                            std::to_string(alloc.size()) + " allocation positions");
  }
  const auto perm = order_users(gains);
  RateReport report;
  report.per_user.resize(gains.size());
  for (int k = 1; k <= alloc.size(); ++k) {
    const double rate = sic_rate(k, gains[perm[k - 1]], rho, alloc);
    report.per_user[k - 1] = rate;
    report.sum += rate;
  }
  return report;
}

std::vector<double> effective_gains(const ChannelRealization& realization, EffectiveGainRule rule) {
  std::vector<double> gains(static_cast<std::size_t>(realization.K), 0.0);
  for (int k = 0; k < realization.K; ++k) {
    double value = 0.0;
    for (int m = 0; m < realization.M; ++m) {
      const double g = realization.gain(m, k);
      value = rule == EffectiveGainRule::MaxAntenna ? std::max(value, g) : value + g;
    }
    gains[k] = value;
  }
  return gains;
}

RateReport sum_rate(const ChannelRealization& realization, double rho,
                    const PowerAllocation& alloc, EffectiveGainRule rule) {
  return sum_rate(effective_gains(realization, rule), rho, alloc);
}

}  // namespace noma
