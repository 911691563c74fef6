#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "noma/channel.hpp"
#include "noma/ee.hpp"
#include "noma/rate.hpp"

namespace noma {

struct SweepSpec {
  std::string axis;
  std::vector<double> values;
  std::string mode;  // "ergodic" or "optimize"
};

struct SolverTolerances {
  double residual = 1e-8;    // Dinkelbach stopping residual
  double power = 1e-10;      // inner bisection tolerance on P
  double quadrature = 1e-8;  // outer-integral absolute tolerance
};

struct RunConfig {
  std::int64_t trials = 100000;
  int gcq_nodes = 50;
  int mc_partitions = 8;
  bool ordered_mc = false;
  SolverTolerances tolerances;
  std::optional<SweepSpec> sweep;
};

struct AllocationSpec {
  bool explicit_gamma = false;
  std::vector<double> gamma;
  std::string rule = "linear";  // "linear" or "uniform"

  PowerAllocation resolve(int K) const;
};

// A fully validated scenario. resolved_json is the canonical single-line
// rendering (defaults materialised, keys sorted) that the CLI embeds in
// output headers; re-parsing it reproduces this scenario exactly.
struct Scenario {
  std::string name = "scenario";
  SystemConfig system;
  double rho_db = 0.0;
  EffectiveGainRule effective_gain = EffectiveGainRule::MaxAntenna;
  AllocationSpec allocation;
  std::optional<PowerModel> power;
  std::optional<AntennaBudget> budget;  // absent: defaulted per K at use site
  RunConfig run;

  std::string resolved_json;
  std::uint64_t hash = 0;

  AntennaBudget budget_for(int K) const;
};

struct CliOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> trials;
  std::optional<int> gcq_nodes;
};

// Parses and validates scenario JSON text. Structural problems (missing or
// unknown fields, wrong types) throw ConfigError; out-of-range values throw
// std::domain_error.
Scenario parse_scenario_text(const std::string& json_text);

// Reads a scenario file and applies flag overrides before validation, so the
// resolved config reflects what actually runs.
Scenario load_scenario(const std::string& path, const CliOverrides& overrides = {});

// Copy of `base` with the sweep axis set to `value` and a per-point seed
// derived from (master seed, point_index).
Scenario scenario_at_sweep_point(const Scenario& base, const std::string& axis, double value,
                                 std::size_t point_index);

}  // namespace noma
