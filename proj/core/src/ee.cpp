#include "noma/ee.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "noma/errors.hpp"
#include "noma/format.hpp"

namespace noma {

namespace {

constexpr double kLn2 = std::numbers::ln2;

// log2(log2 K); positive for K >= 3.
double loglog_k(int K) {
  if (K < 3) {
    throw std::domain_error("rate_model: K must be >= 3 so that log2(log2 K) is positive, got " +
                            std::to_string(K));
  }
  return std::log2(std::log2(static_cast<double>(K)));
}

void check_rate_domain(double P_k, const PowerModel& power, double llk) {
  if (!(P_k * llk >= power.N_0)) {
    throw std::domain_error("rate_model: P_k must be >= N_0/log2(log2 K) = " +
                            fmt_g17(power.N_0 / llk) + ", got " + fmt_g17(P_k));
  }
}

void check_sizes(const AntennaBudget& budget, int K) {
  const auto expect = static_cast<std::size_t>(K);
  if (budget.N_k_b_a.size() != expect || budget.N_k_c_ue.size() != expect ||
      budget.N_k_c_rf.size() != expect) {
    throw std::domain_error("antenna budget: per-user arrays must have K=" + std::to_string(K) +
                            " entries");
  }
}

}  // namespace

void PowerModel::validate() const {
  if (!(eta > 0.0) || eta > 1.0) {
    throw std::domain_error("power model: eta must be in (0, 1], got " + fmt_g17(eta));
  }
  if (!(P_c >= 0.0)) throw std::domain_error("power model: P_c must be >= 0, got " + fmt_g17(P_c));
  if (!(P_RF >= 0.0)) throw std::domain_error("power model: P_RF must be >= 0, got " + fmt_g17(P_RF));
  if (!(P_T > 0.0)) throw std::domain_error("power model: P_T must be positive, got " + fmt_g17(P_T));
  if (!(N_0 > 0.0)) throw std::domain_error("power model: N_0 must be positive, got " + fmt_g17(N_0));
}

AntennaBudget AntennaBudget::default_for(int K) {
  if (K < 1) throw std::domain_error("antenna budget: K must be >= 1, got " + std::to_string(K));
  AntennaBudget budget;
  budget.N_bs_a = K;
  budget.N_bs_rf = K;
  budget.N_k_b_a.assign(static_cast<std::size_t>(K), 1);
  budget.N_k_c_ue.assign(static_cast<std::size_t>(K), 1);
  budget.N_k_c_rf = budget.N_k_b_a;
  return budget;
}

void AntennaBudget::validate(int K) const {
  check_sizes(*this, K);
  if (N_bs_a < 0 || N_bs_rf < 0) {
    throw std::domain_error("antenna budget: base-station counts must be >= 0");
  }
  for (const auto& arr : {&N_k_b_a, &N_k_c_ue, &N_k_c_rf}) {
    for (const int v : *arr) {
      if (v < 0) throw std::domain_error("antenna budget: per-user counts must be >= 0");
    }
  }
}

const char* ConstraintReport::first_violated() const {
  if (!c1) return "C1";
  if (!c2) return "C2";
  if (!c3) return "C3";
  if (!c4) return "C4";
  return "";
}

double rate_model(double P_k, const PowerModel& power, int K) {
  power.validate();
  const double llk = loglog_k(K);
  check_rate_domain(P_k, power, llk);
  return std::log2(P_k / power.N_0 * llk);
}

double rate_model_domain_min(const PowerModel& power, int K) {
  power.validate();
  return (1.0 + 1e-9) * power.N_0 / loglog_k(K);
}

double ee_objective(double P_k, const PowerModel& power, int K) {
  const double rate = rate_model(P_k, power, K);
  const double consumed = P_k + power.P_RF;
  if (!(consumed > 0.0)) {
    throw std::domain_error("ee_objective: P_k + P_RF must be positive, got " + fmt_g17(consumed));
  }
  return rate / consumed;
}

ConstraintReport check_constraints(double P_k, const PowerModel& power,
                                   const AntennaBudget& budget, int K) {
  check_sizes(budget, K);
  ConstraintReport report;
  const double per_user = P_k / power.eta + power.P_c + power.P_RF;
  report.c1 = K * per_user <= power.P_T;
  const long antenna_demand = std::accumulate(budget.N_k_b_a.begin(), budget.N_k_b_a.end(), 0L);
  report.c2 = antenna_demand <= budget.N_bs_a;
  const long assigned_rf = std::accumulate(budget.N_k_c_rf.begin(), budget.N_k_c_rf.end(), 0L);
  report.c3 = assigned_rf <= budget.N_bs_rf &&
              std::all_of(budget.N_k_c_ue.begin(), budget.N_k_c_ue.end(),
                          [assigned_rf](int need) { return need <= assigned_rf; });
  report.c4 = P_k >= 0.0 && power.P_c >= 0.0 && power.P_RF >= 0.0;
  return report;
}

double dinkelbach_value(double S, double P_k, const PowerModel& power, int K) {
  return rate_model(P_k, power, K) - S * (P_k + power.P_RF);
}

double ee_gradient(double P_k, const PowerModel& power, int K, GradientForm form) {
  power.validate();
  const double llk = loglog_k(K);
  check_rate_domain(P_k, power, llk);
  const double q = P_k + power.P_RF;
  const double rate = std::log2(P_k / power.N_0 * llk);
  const double lead = form == GradientForm::Corrected ? q / (P_k * kLn2) : 1.0 / (P_k * kLn2);
  return (lead - rate) / (q * q);
}

double ee_second_derivative(double P_k, const PowerModel& power, int K, GradientForm form) {
  power.validate();
  const double llk = loglog_k(K);
  check_rate_domain(P_k, power, llk);
  const double q = P_k + power.P_RF;
  const double rate = std::log2(P_k / power.N_0 * llk);
  const double rate_p = 1.0 / (P_k * kLn2);
  if (form == GradientForm::Corrected) {
    const double rate_pp = -1.0 / (P_k * P_k * kLn2);
    return rate_pp / q - 2.0 * rate_p / (q * q) + 2.0 * rate / (q * q * q);
  }
  // Published simplification, evaluated exactly as printed.
  return (-1.0 / (P_k * P_k * kLn2) - 1.0 / (P_k * llk * kLn2)) / (q * q) -
         2.0 * (rate_p - rate) / (q * q * q);
}

namespace {

// argmax over [lo, hi] of rate_model(P) - S*(P + P_RF). The objective is
// concave in P, so its derivative 1/(P ln2) - S is decreasing and a plain
// bisection with projection onto the bounds suffices.
double inner_bisection(double S, double lo, double hi, double p_tol) {
  const auto slope = [S](double P) { return 1.0 / (P * kLn2) - S; };
  if (slope(hi) >= 0.0) return hi;
  if (slope(lo) <= 0.0) return lo;
  for (int i = 0; i < 200 && hi - lo > p_tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    (slope(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Projected ascent with diminishing 1/n steps on the same inner problem.
// Slower than bisection; retained as an independent cross-check.
double inner_subgradient(double S, double lo, double hi, double p_tol) {
  double P = std::clamp(1.0, lo, hi);
  constexpr int kMaxSteps = 50000;
  for (int n = 1; n <= kMaxSteps; ++n) {
    const double g = 1.0 / (P * kLn2) - S;
    const double next = std::clamp(P + g / n, lo, hi);
    if (std::abs(next - P) < p_tol && n > 100) return next;
    P = next;
  }
  return P;
}

}  // namespace

EeSolution maximize_ee(const PowerModel& power, const AntennaBudget& budget, int K,
                       const SolverOptions& options) {
  power.validate();
  const double llk = loglog_k(K);
  budget.validate(K);

  const long antenna_demand = std::accumulate(budget.N_k_b_a.begin(), budget.N_k_b_a.end(), 0L);
  if (antenna_demand > budget.N_bs_a) {
    throw FeasibilityError("C2", "per-user antenna demand " + std::to_string(antenna_demand) +
                                     " exceeds N_bs_a=" + std::to_string(budget.N_bs_a));
  }
  const long assigned_rf = std::accumulate(budget.N_k_c_rf.begin(), budget.N_k_c_rf.end(), 0L);
  if (assigned_rf > budget.N_bs_rf) {
    throw FeasibilityError("C3", "assigned RF chains " + std::to_string(assigned_rf) +
                                     " exceed N_bs_rf=" + std::to_string(budget.N_bs_rf));
  }
  for (std::size_t k = 0; k < budget.N_k_c_ue.size(); ++k) {
    if (budget.N_k_c_ue[k] > assigned_rf) {
      throw FeasibilityError("C3", "user " + std::to_string(k + 1) + " needs " +
                                       std::to_string(budget.N_k_c_ue[k]) +
                                       " RF chains but only " + std::to_string(assigned_rf) +
                                       " are assigned");
    }
  }

  const double p_min = (1.0 + 1e-9) * power.N_0 / llk;
  const double p_max = power.eta * (power.P_T / K - power.P_c - power.P_RF);
  if (!(p_max >= p_min)) {
    throw FeasibilityError("C1", "power budget admits at most P_k=" + fmt_g17(p_max) +
                                     " per user, below the rate-model minimum " + fmt_g17(p_min));
  }

  const auto inner = options.inner == InnerSolver::DerivativeBisection ? inner_bisection
                                                                       : inner_subgradient;

  EeSolution solution;
  // Start from the EE of a feasible anchor power; any S with nonnegative
  // residual keeps the Dinkelbach sequence nondecreasing.
  double S = ee_objective(std::clamp(1.0, p_min, p_max), power, K);
  for (int n = 0; n < options.max_iter; ++n) {
    const double P = inner(S, p_min, p_max, options.p_tol);
    const double rate = rate_model(P, power, K);
    const double residual = rate - S * (P + power.P_RF);
    solution.trace.push_back({n, S, residual, P});
    solution.iterations = n + 1;
    if (std::abs(residual) <= options.residual_tol) {
      solution.P_star = P;
      solution.S_star = rate / (P + power.P_RF);
      solution.converged = true;
      return solution;
    }
    S = rate / (P + power.P_RF);
  }
  const auto& last = solution.trace.back();
  throw NumericalError("maximize_ee: no convergence after " + std::to_string(options.max_iter) +
                       " iterations; last S=" + fmt_g17(last.S) +
                       ", residual=" + fmt_g17(last.residual) + ", P=" + fmt_g17(last.P));
}

}  // namespace noma
