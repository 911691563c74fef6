#pragma once

#include <cstdint>
#include <vector>

#include "noma/channel.hpp"
#include "noma/rate.hpp"
#include "noma/rng.hpp"

namespace noma {

// Gauss-Chebyshev nodes and weights specialised to the disk gain model.
// For node j (1-based): theta_j = cos((2j-1)pi/2N), t_j = (R_D/2)(theta_j+1),
// c_j = 1 + t_j^alpha, omega = pi/N and
// delta_j = omega * sqrt(1-theta_j^2) * t_j * c_j, so that the gain density
// is approximated by f(x) ~= (1/R_D) * sum_j delta_j * exp(-c_j x).
struct GcqCoefficients {
  int N = 0;
  double R_D = 0.0;
  double alpha = 0.0;
  std::vector<double> theta;
  std::vector<double> omega;
  std::vector<double> t;
  std::vector<double> c;
  std::vector<double> delta;
};

GcqCoefficients gcq_coefficients(int N, double R_D, double alpha);

// Mixture-of-exponentials density / CDF implied by the coefficients.
double gain_pdf(double x, const GcqCoefficients& coeffs);
double gain_cdf(double x, const GcqCoefficients& coeffs);

// Total mass (1/R_D) * sum delta/c; approaches 1 as N grows.
double pdf_normalization(const GcqCoefficients& coeffs);

struct QuadratureSettings {
  double abs_tol = 1e-8;    // absolute tolerance per rate term
  double tail_eps = 1e-12;  // truncate where the slowest exponential falls below this
  int max_depth = 48;
};

// Ergodic sum rate via the quadrature density: per SIC position, the rate
// expression is integrated against gain_pdf with an adaptive outer
// integrator. Single-antenna semantics regardless of config.M.
double ergodic_sum_rate_gcq(const SystemConfig& config, const PowerAllocation& alloc,
                            int nodes, const QuadratureSettings& quad = {});

struct McOptions {
  int partitions = 8;    // independent substreams; merge is order-independent
  bool ordered = false;  // sort each trial's gains ascending before assigning positions
};

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t trials = 0;
};

// Monte-Carlo companion of ergodic_sum_rate_gcq: per trial one gain is drawn
// per SIC position (fresh distance and fading, unordered by default) and the
// positionwise rates are summed. Deterministic given (stream seed,
// partitions).
McEstimate ergodic_sum_rate_mc(const SystemConfig& config, const PowerAllocation& alloc,
                               std::int64_t trials, const Rng& stream,
                               const McOptions& options = {});

// High-SNR growth law log2(rho * log2(log2 K)). Requires K >= 3 and
// rho*log2(log2 K) > 1; throws std::domain_error naming the failing bound.
double asymptotic_rate(double rho, int K);

}  // namespace noma
