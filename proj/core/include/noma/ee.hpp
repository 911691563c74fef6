#pragma once

#include <vector>

namespace noma {

// Power bookkeeping for one cluster: amplifier efficiency eta, per-user
// circuit power P_c, RF-chain power P_RF, total budget P_T, noise power N_0.
struct PowerModel {
  double eta = 1.0;
  double P_c = 0.0;
  double P_RF = 0.0;
  double P_T = 1.0;
  double N_0 = 1.0;

  // Throws std::domain_error naming the first field out of range.
  void validate() const;
};

// Antenna counts: base-station totals plus per-user demands. N_k_c_rf are
// the RF chains assigned per user; by default they mirror N_k_b_a.
struct AntennaBudget {
  int N_bs_a = 0;
  int N_bs_rf = 0;
  std::vector<int> N_k_b_a;
  std::vector<int> N_k_c_ue;
  std::vector<int> N_k_c_rf;

  static AntennaBudget default_for(int K);
  void validate(int K) const;
};

struct ConstraintReport {
  bool c1 = false;  // total consumed power within P_T
  bool c2 = false;  // antenna demand within base-station antennas
  bool c3 = false;  // per-user RF needs within assigned chains, chains within budget
  bool c4 = false;  // nonnegative powers

  bool feasible() const { return c1 && c2 && c3 && c4; }
  const char* first_violated() const;
};

enum class GradientForm {
  Corrected,  // quotient-rule derivative of ee_objective
  Literal,    // legacy simplification: leading term missing the (P+P_RF) factor
};

enum class InnerSolver {
  DerivativeBisection,
  Subgradient,  // diminishing 1/n steps; kept for cross-validation
};

struct SolverOptions {
  double residual_tol = 1e-8;
  double p_tol = 1e-10;
  int max_iter = 50;
  InnerSolver inner = InnerSolver::DerivativeBisection;
};

struct DinkelbachStep {
  int iteration = 0;
  double S = 0.0;
  double residual = 0.0;  // max_P rate_model(P) - S*(P + P_RF)
  double P = 0.0;         // maximiser for this S
};

struct EeSolution {
  double P_star = 0.0;
  double S_star = 0.0;
  int iterations = 0;
  std::vector<DinkelbachStep> trace;
  bool converged = false;
};

// High-SNR per-user rate proxy log2((P_k/N_0) * log2(log2 K)). Defined for
// K >= 3 and P_k*log2(log2 K) >= N_0 (outer-log argument at least 1).
double rate_model(double P_k, const PowerModel& power, int K);

// Smallest admissible per-user power, nudged above the rate-model boundary.
double rate_model_domain_min(const PowerModel& power, int K);

// rate_model(P_k) / (P_k + P_RF), in bits per joule per unit bandwidth.
double ee_objective(double P_k, const PowerModel& power, int K);

// Evaluates C1..C4 for a homogeneous per-user power P_k. Infeasibility is a
// result, not an error.
ConstraintReport check_constraints(double P_k, const PowerModel& power,
                                   const AntennaBudget& budget, int K);

// Parametric residual rate_model(P_k) - S*(P_k + P_RF).
double dinkelbach_value(double S, double P_k, const PowerModel& power, int K);

double ee_gradient(double P_k, const PowerModel& power, int K, GradientForm form);
double ee_second_derivative(double P_k, const PowerModel& power, int K, GradientForm form);

// Dinkelbach iteration over the homogeneous per-user power, inner problem
// solved on [P_min, P_max] derived from the rate-model domain and C1.
// Throws FeasibilityError when no power satisfies the constraints and
// NumericalError when max_iter is exhausted.
EeSolution maximize_ee(const PowerModel& power, const AntennaBudget& budget, int K,
                       const SolverOptions& options = {});

}  // namespace noma
