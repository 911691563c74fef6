#pragma once

#include <vector>

#include "noma/channel.hpp"

namespace noma {

// Power-allocation coefficients over SIC positions. Position 1 is the
// weakest user and receives gamma[0]; coefficients are nonnegative and sum
// to 1 (checked to 1e-12 on construction).
class PowerAllocation {
public:
  static PowerAllocation from_coefficients(std::vector<double> gamma);

  // gamma_k proportional to K - k + 1: the weakest user gets the largest share.
  static PowerAllocation linear_rule(int K);
  static PowerAllocation uniform(int K);

  int size() const { return static_cast<int>(gamma_.size()); }
  const std::vector<double>& coefficients() const { return gamma_; }

  // 1-based accessors over SIC positions.
  double coefficient(int k) const;

  // Sum of the shares of users decoded after position k (zero for k = K).
  double residual_interference(int k) const;

private:
  PowerAllocation() = default;

  std::vector<double> gamma_;
  std::vector<double> tail_;  // tail_[k] = sum of gamma_[k..K-1]; tail_[K] = 0
};

struct RateReport {
  std::vector<double> per_user;  // indexed by SIC position (0 = weakest)
  double sum = 0.0;              // exactly the accumulation of per_user
};

enum class EffectiveGainRule {
  MaxAntenna,   // strongest antenna link per user
  SumAntennas,  // total power across antennas
};

// Stable ascending permutation of user indices by gain (0-based).
std::vector<int> order_users(const std::vector<double>& gains);

// SIC rate of position k (1-based): log2(1 + rho*g*gamma_k / (rho*g*tail_k + 1)),
// where tail_k is the residual interference decoded after position k.
double sic_rate(int k, double gain, double rho, const PowerAllocation& alloc);

// Per-position rates after relabeling users in ascending gain order.
RateReport sum_rate(const std::vector<double>& gains, double rho, const PowerAllocation& alloc);

// Scalar per-user gain from an M-antenna realization.
std::vector<double> effective_gains(const ChannelRealization& realization, EffectiveGainRule rule);

RateReport sum_rate(const ChannelRealization& realization, double rho,
                    const PowerAllocation& alloc, EffectiveGainRule rule);

}  // namespace noma
