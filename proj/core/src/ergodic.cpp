#include "noma/ergodic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "noma/errors.hpp"
#include "noma/format.hpp"
#include "noma/quadrature.hpp"

namespace noma {

namespace {

constexpr double kInvLn2 = 1.4426950408889634;  // 1/ln(2)

double draw_distance(const SystemConfig& config, Rng& rng) {
  const double u = rng.uniform01();
  return config.placement == PlacementModel::UniformArea ? config.R_D * std::sqrt(u)
                                                         : config.R_D * u;
}

}  // namespace

GcqCoefficients gcq_coefficients(int N, double R_D, double alpha) {
  if (N < 1) throw std::domain_error("gcq_coefficients: N must be >= 1, got " + std::to_string(N));
  if (!(R_D > 0.0)) throw std::domain_error("gcq_coefficients: R_D must be positive, got " + fmt_g17(R_D));
  if (!(alpha > 0.0)) throw std::domain_error("gcq_coefficients: alpha must be positive, got " + fmt_g17(alpha));
  GcqCoefficients coeffs;
  coeffs.N = N;
  coeffs.R_D = R_D;
  coeffs.alpha = alpha;
  coeffs.theta.resize(static_cast<std::size_t>(N));
  coeffs.omega.assign(static_cast<std::size_t>(N), std::numbers::pi / N);
  coeffs.t.resize(static_cast<std::size_t>(N));
  coeffs.c.resize(static_cast<std::size_t>(N));
  coeffs.delta.resize(static_cast<std::size_t>(N));
  for (int j = 1; j <= N; ++j) {
    const std::size_t i = static_cast<std::size_t>(j) - 1;
    const double angle = (2.0 * j - 1.0) * std::numbers::pi / (2.0 * N);
    const double theta = std::cos(angle);
    const double t = 0.5 * R_D * theta + 0.5 * R_D;
    const double c = 1.0 + std::pow(t, alpha);
    coeffs.theta[i] = theta;
    coeffs.t[i] = t;
    coeffs.c[i] = c;
    coeffs.delta[i] = coeffs.omega[i] * std::sqrt(1.0 - theta * theta) * t * c;
  }
  return coeffs;
}

double gain_pdf(double x, const GcqCoefficients& coeffs) {
  if (!(x >= 0.0)) throw std::domain_error("gain_pdf: x must be >= 0, got " + fmt_g17(x));
  double sum = 0.0;
  for (std::size_t j = 0; j < coeffs.delta.size(); ++j) {
    sum += coeffs.delta[j] * std::exp(-coeffs.c[j] * x);
  }
  return sum / coeffs.R_D;
}

double gain_cdf(double x, const GcqCoefficients& coeffs) {
  if (!(x >= 0.0)) throw std::domain_error("gain_cdf: x must be >= 0, got " + fmt_g17(x));
  double sum = 0.0;
  for (std::size_t j = 0; j < coeffs.delta.size(); ++j) {
    sum += coeffs.delta[j] / coeffs.c[j] * (1.0 - std::exp(-coeffs.c[j] * x));
  }
  return sum / coeffs.R_D;
}

double pdf_normalization(const GcqCoefficients& coeffs) {
  double sum = 0.0;
  for (std::size_t j = 0; j < coeffs.delta.size(); ++j) sum += coeffs.delta[j] / coeffs.c[j];
  return sum / coeffs.R_D;
}

double ergodic_sum_rate_gcq(const SystemConfig& config, const PowerAllocation& alloc,
                            int nodes, const QuadratureSettings& quad) {
  config.validate();
  if (alloc.size() != config.K) {
    throw std::domain_error("ergodic_sum_rate_gcq: allocation has " + std::to_string(alloc.size()) +
                            " positions for K=" + std::to_string(config.K));
  }
  const GcqCoefficients coeffs = gcq_coefficients(nodes, config.R_D, config.alpha);
  const double c_min = *std::min_element(coeffs.c.begin(), coeffs.c.end());
  // Beyond x_max every mixture component is below tail_eps; the integrand
  // tail is O(tail_eps) and is dropped.
  const double x_max = -std::log(quad.tail_eps) / c_min;
  double total = 0.0;
  for (int k = 1; k <= config.K; ++k) {
    const double share = alloc.coefficient(k);
    if (share == 0.0) continue;  // zero share carries exactly zero rate
    const double signal = config.rho * share;
    const double interference = config.rho * alloc.residual_interference(k);
    auto integrand = [&](double x) {
      return kInvLn2 * std::log1p(signal * x / (interference * x + 1.0)) * gain_pdf(x, coeffs);
    };
    const QuadratureOutcome outcome =
        integrate_adaptive(integrand, 0.0, x_max, quad.abs_tol, quad.max_depth);
    if (!outcome.converged) {
      throw NumericalError("ergodic_sum_rate_gcq: outer quadrature for position " +
                           std::to_string(k) + " did not reach tol=" + fmt_g17(quad.abs_tol) +
                           " (error estimate " + fmt_g17(outcome.error_estimate) + " after " +
                           std::to_string(outcome.evaluations) + " evaluations)");
    }
    total += outcome.value;
  }
  return total;
}

McEstimate ergodic_sum_rate_mc(const SystemConfig& config, const PowerAllocation& alloc,
                               std::int64_t trials, const Rng& stream,
                               const McOptions& options) {
  config.validate();
  if (alloc.size() != config.K) {
    throw std::domain_error("ergodic_sum_rate_mc: allocation has " + std::to_string(alloc.size()) +
                            " positions for K=" + std::to_string(config.K));
  }
  if (trials < 1) {
    throw std::domain_error("ergodic_sum_rate_mc: trials must be >= 1, got " +
                            std::to_string(trials));
  }
  if (options.partitions < 1) {
    throw std::domain_error("ergodic_sum_rate_mc: partitions must be >= 1, got " +
                            std::to_string(options.partitions));
  }

  const std::int64_t partitions = std::min<std::int64_t>(options.partitions, trials);
  const int K = config.K;
  std::vector<double> gains(static_cast<std::size_t>(K));

  // Per-partition sums are merged in index order, so the estimate does not
  // depend on how partitions are scheduled.
  double total = 0.0;
  double total_sq = 0.0;
  for (std::int64_t p = 0; p < partitions; ++p) {
    Rng rng = stream.substream(static_cast<std::uint64_t>(p));
    const std::int64_t count = trials / partitions + (p < trials % partitions ? 1 : 0);
    double part_sum = 0.0;
    double part_sq = 0.0;
    for (std::int64_t i = 0; i < count; ++i) {
      // Draw order per trial: for each position, distance then fading power.
      for (int k = 0; k < K; ++k) {
        const double d = draw_distance(config, rng);
        const double beta = 1.0 / (1.0 + std::pow(d, config.alpha));
        gains[static_cast<std::size_t>(k)] = rng.exponential() * beta;
      }
      if (options.ordered) std::sort(gains.begin(), gains.end());
      double rate = 0.0;
      for (int k = 1; k <= K; ++k) {
        rate += sic_rate(k, gains[static_cast<std::size_t>(k) - 1], config.rho, alloc);
      }
      part_sum += rate;
      part_sq += rate * rate;
    }
    total += part_sum;
    total_sq += part_sq;
  }

  McEstimate estimate;
  estimate.trials = trials;
  estimate.mean = total / static_cast<double>(trials);
  if (trials > 1) {
    const double n = static_cast<double>(trials);
    const double var = std::max(0.0, (total_sq - n * estimate.mean * estimate.mean) / (n - 1.0));
    estimate.std_error = std::sqrt(var / n);
  }
  return estimate;
}

double asymptotic_rate(double rho, int K) {
  if (K < 3) {
    throw std::domain_error("asymptotic_rate: K must be >= 3 so that log2(log2 K) is positive, got " +
                            std::to_string(K));
  }
  if (!(rho > 0.0)) throw std::domain_error("asymptotic_rate: rho must be positive, got " + fmt_g17(rho));
  const double loglog_k = std::log2(std::log2(static_cast<double>(K)));
  if (!(rho * loglog_k > 1.0)) {
    throw std::domain_error("asymptotic_rate: rho*log2(log2 K) must exceed 1, got " +
                            fmt_g17(rho * loglog_k));
  }
  return std::log2(rho * loglog_k);
}

}  // namespace noma
