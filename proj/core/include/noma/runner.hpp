#pragma once

#include <iosfwd>
#include <string>

#include "noma/scenario.hpp"

namespace noma {

// Process exit codes shared by the CLI and the integration tests.
inline constexpr int kExitSuccess = 0;
inline constexpr int kExitFailure = 1;  // unexpected error
inline constexpr int kExitConfig = 2;   // malformed scenario, unusable output sink
inline constexpr int kExitInvariant = 3;       // parameter outside its valid range
inline constexpr int kExitInfeasible = 4;      // constraint set admits no power
inline constexpr int kExitNonConvergence = 5;  // iteration budget exhausted

// Reproducibility preamble: tool version, mode, scenario hash, master seed,
// and the canonical config on a single line. Feeding that line back through
// the CLI reproduces the output byte for byte.
void write_header(std::ostream& out, const Scenario& scenario, const std::string& mode);

// Instantaneous rates for run.trials independent channel realizations, one
// row per realization plus a trailing mean row.
void run_simulate(const Scenario& scenario, std::ostream& out);

// Single-row comparison of the quadrature rate against its Monte-Carlo
// estimate and the high-SNR growth law.
void run_ergodic(const Scenario& scenario, std::ostream& out);

// Energy-efficiency maximisation: iteration trace, then a summary row with
// the constraint flags at the solution.
void run_optimize(const Scenario& scenario, std::ostream& out);

// One ergodic or optimize summary row per sweep value, points computed
// concurrently and emitted in axis order.
void run_sweep(const Scenario& scenario, std::ostream& out);

// Dispatches one CLI mode. Unknown modes throw ConfigError.
void run_command(const std::string& mode, const Scenario& scenario, std::ostream& out);

// Full CLI path: load the scenario with overrides applied, open the sink
// (empty out_path means stdout), run the mode, and map exceptions to exit
// codes with diagnostics on err.
int execute(const std::string& mode, const std::string& scenario_path,
            const CliOverrides& overrides, const std::string& out_path, std::ostream& err);

}  // namespace noma
