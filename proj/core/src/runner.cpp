#include "noma/runner.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <future>
#include <iostream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "noma/channel.hpp"
#include "noma/ee.hpp"
#include "noma/ergodic.hpp"
#include "noma/errors.hpp"
#include "noma/format.hpp"
#include "noma/rate.hpp"
#include "noma/rng.hpp"
#include "noma/version.hpp"

namespace noma {
namespace {

QuadratureSettings quadrature_settings(const Scenario& scenario) {
  QuadratureSettings quad;
  quad.abs_tol = scenario.run.tolerances.quadrature;
  return quad;
}

SolverOptions solver_options(const Scenario& scenario) {
  SolverOptions options;
  options.residual_tol = scenario.run.tolerances.residual;
  options.p_tol = scenario.run.tolerances.power;
  return options;
}

// Row shared by the ergodic mode and ergodic sweep points:
// K,rho_db,gcq_rate,mc_rate,mc_stderr,asymptotic_rate,rel_gap. The
// asymptotic column is left empty where the growth law does not apply.
std::string ergodic_row(const Scenario& scenario) {
  const PowerAllocation alloc = scenario.allocation.resolve(scenario.system.K);
  const double gcq = ergodic_sum_rate_gcq(scenario.system, alloc, scenario.run.gcq_nodes,
                                          quadrature_settings(scenario));

  McOptions mc_options;
  mc_options.partitions = scenario.run.mc_partitions;
  mc_options.ordered = scenario.run.ordered_mc;
  const McEstimate mc = ergodic_sum_rate_mc(scenario.system, alloc, scenario.run.trials,
                                            Rng(scenario.system.seed), mc_options);

  std::string asymptotic;
  try {
    asymptotic = fmt_g17(asymptotic_rate(scenario.system.rho, scenario.system.K));
  } catch (const std::domain_error&) {
    // Below the K or SNR threshold the column stays empty.
  }

  const double rel_gap = std::abs(gcq - mc.mean) / std::abs(mc.mean);

  std::ostringstream row;
  row << scenario.system.K << ',' << fmt_g17(scenario.rho_db) << ',' << fmt_g17(gcq) << ','
      << fmt_g17(mc.mean) << ',' << fmt_g17(mc.std_error) << ',' << asymptotic << ','
      << fmt_g17(rel_gap);
  return row.str();
}

// Summary row shared by the optimize mode and optimize sweep points:
// P_star,S_star,converged,C1,C2,C3,C4.
std::string optimize_summary_row(const Scenario& scenario) {
  const int K = scenario.system.K;
  const AntennaBudget budget = scenario.budget_for(K);
  const EeSolution solution = maximize_ee(*scenario.power, budget, K, solver_options(scenario));
  const ConstraintReport report = check_constraints(solution.P_star, *scenario.power, budget, K);

  std::ostringstream row;
  row << fmt_g17(solution.P_star) << ',' << fmt_g17(solution.S_star) << ','
      << (solution.converged ? 1 : 0) << ',' << (report.c1 ? 1 : 0) << ',' << (report.c2 ? 1 : 0)
      << ',' << (report.c3 ? 1 : 0) << ',' << (report.c4 ? 1 : 0);
  return row.str();
}

}  // namespace

void write_header(std::ostream& out, const Scenario& scenario, const std::string& mode) {
  out << "# noma-ee " << kVersion << '\n';
  out << "# command: " << mode << '\n';
  out << "# scenario-hash: " << fmt_hex16(scenario.hash) << '\n';
  out << "# seed: " << scenario.system.seed << '\n';
  out << "# config: " << scenario.resolved_json << '\n';
}

void run_simulate(const Scenario& scenario, std::ostream& out) {
  write_header(out, scenario, "simulate");

  const int K = scenario.system.K;
  const PowerAllocation alloc = scenario.allocation.resolve(K);
  const std::int64_t n = scenario.run.trials;

  out << "realization,seed";
  for (int k = 1; k <= K; ++k) out << ",R_" << k;
  out << ",sum_rate,sum_rate_stderr\n";

  std::vector<double> user_sums(static_cast<std::size_t>(K), 0.0);
  double total = 0.0;
  double total_sq = 0.0;
  for (std::int64_t r = 0; r < n; ++r) {
    const std::uint64_t row_seed =
        derive_stream_seed(scenario.system.seed, static_cast<std::uint64_t>(r));
    Rng stream(row_seed);
    const std::vector<double> distances = sample_placement(scenario.system, stream);
    const ChannelRealization realization = sample_channel(scenario.system, distances, stream);
    const RateReport report =
        sum_rate(realization, scenario.system.rho, alloc, scenario.effective_gain);

    out << r << ',' << row_seed;
    for (int k = 0; k < K; ++k) {
      const double rate = report.per_user[static_cast<std::size_t>(k)];
      user_sums[static_cast<std::size_t>(k)] += rate;
      out << ',' << fmt_g17(rate);
    }
    total += report.sum;
    total_sq += report.sum * report.sum;
    out << ',' << fmt_g17(report.sum) << ",\n";
  }

  const double count = static_cast<double>(n);
  const double mean = total / count;
  double std_error = 0.0;
  if (n > 1) {
    const double variance = std::max(0.0, (total_sq - count * mean * mean) / (count - 1.0));
    std_error = std::sqrt(variance / count);
  }

  out << "mean," << scenario.system.seed;
  for (int k = 0; k < K; ++k) out << ',' << fmt_g17(user_sums[static_cast<std::size_t>(k)] / count);
  out << ',' << fmt_g17(mean) << ',' << fmt_g17(std_error) << '\n';
}

void run_ergodic(const Scenario& scenario, std::ostream& out) {
  write_header(out, scenario, "ergodic");
  out << "K,rho_db,gcq_rate,mc_rate,mc_stderr,asymptotic_rate,rel_gap\n";
  out << ergodic_row(scenario) << '\n';
}

void run_optimize(const Scenario& scenario, std::ostream& out) {
  if (!scenario.power) throw ConfigError("power", "optimize mode requires a power section");

  const int K = scenario.system.K;
  const AntennaBudget budget = scenario.budget_for(K);
  const EeSolution solution = maximize_ee(*scenario.power, budget, K, solver_options(scenario));
  const ConstraintReport report = check_constraints(solution.P_star, *scenario.power, budget, K);

  write_header(out, scenario, "optimize");
  out << "iteration,S_n,residual,P_n\n";
  for (const DinkelbachStep& step : solution.trace) {
    out << step.iteration << ',' << fmt_g17(step.S) << ',' << fmt_g17(step.residual) << ','
        << fmt_g17(step.P) << '\n';
  }
  out << '\n';
  out << "P_star,S_star,converged,C1,C2,C3,C4\n";
  out << fmt_g17(solution.P_star) << ',' << fmt_g17(solution.S_star) << ','
      << (solution.converged ? 1 : 0) << ',' << (report.c1 ? 1 : 0) << ',' << (report.c2 ? 1 : 0)
      << ',' << (report.c3 ? 1 : 0) << ',' << (report.c4 ? 1 : 0) << '\n';
}

void run_sweep(const Scenario& scenario, std::ostream& out) {
  if (!scenario.run.sweep) throw ConfigError("run.sweep", "sweep mode requires a sweep section");
  const SweepSpec spec = *scenario.run.sweep;
  if (spec.mode == "optimize" && !scenario.power) {
    throw ConfigError("power", "optimize sweep requires a power section");
  }

  write_header(out, scenario, "sweep");
  if (spec.mode == "ergodic") {
    out << "sweep_value,K,rho_db,gcq_rate,mc_rate,mc_stderr,asymptotic_rate,rel_gap\n";
  } else {
    out << "sweep_value,P_star,S_star,converged,C1,C2,C3,C4\n";
  }

  std::vector<std::future<std::string>> rows;
  rows.reserve(spec.values.size());
  for (std::size_t i = 0; i < spec.values.size(); ++i) {
    rows.push_back(std::async(std::launch::async, [&scenario, &spec, i] {
      const Scenario point = scenario_at_sweep_point(scenario, spec.axis, spec.values[i], i);
      return spec.mode == "ergodic" ? ergodic_row(point) : optimize_summary_row(point);
    }));
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out << fmt_g17(spec.values[i]) << ',' << rows[i].get() << '\n';
  }
}

void run_command(const std::string& mode, const Scenario& scenario, std::ostream& out) {
  if (mode == "simulate") {
    run_simulate(scenario, out);
  } else if (mode == "ergodic") {
    run_ergodic(scenario, out);
  } else if (mode == "optimize") {
    run_optimize(scenario, out);
  } else if (mode == "sweep") {
    run_sweep(scenario, out);
  } else {
    throw ConfigError("mode", "unknown mode '" + mode + "'");
  }
}

int execute(const std::string& mode, const std::string& scenario_path,
            const CliOverrides& overrides, const std::string& out_path, std::ostream& err) {
  try {
    const Scenario scenario = load_scenario(scenario_path, overrides);
    if (out_path.empty()) {
      run_command(mode, scenario, std::cout);
      std::cout.flush();
    } else {
      std::ofstream file(out_path);
      if (!file) throw ConfigError("--out", "cannot open '" + out_path + "' for writing");
      run_command(mode, scenario, file);
      file.flush();
      if (!file) throw ConfigError("--out", "write to '" + out_path + "' failed");
    }
    return kExitSuccess;
  } catch (const ConfigError& e) {
    err << "noma-ee: error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const FeasibilityError& e) {
    err << "noma-ee: error: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const NumericalError& e) {
    err << "noma-ee: error: " << e.what() << '\n';
    return kExitNonConvergence;
  } catch (const std::domain_error& e) {
    err << "noma-ee: error: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::exception& e) {
    err << "noma-ee: error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace noma
