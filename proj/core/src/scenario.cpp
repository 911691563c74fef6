#include "noma/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "noma/errors.hpp"
#include "noma/format.hpp"
#include "noma/rng.hpp"

namespace noma {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const std::string& where,
                         const std::set<std::string>& known) {
  for (const auto& item : obj.items()) {
    if (!known.contains(item.key())) {
      throw ConfigError(where.empty() ? item.key() : where + "." + item.key(), "unknown field");
    }
  }
}

const json& require_object(const json& parent, const std::string& key) {
  if (!parent.contains(key)) throw ConfigError(key, "missing required section");
  const json& value = parent.at(key);
  if (!value.is_object()) throw ConfigError(key, "expected an object");
  return value;
}

double require_number(const json& obj, const std::string& path, const std::string& key) {
  const std::string field = path + "." + key;
  if (!obj.contains(key)) throw ConfigError(field, "missing required field");
  const json& value = obj.at(key);
  if (!value.is_number()) throw ConfigError(field, "expected a number");
  return value.get<double>();
}

double optional_number(const json& obj, const std::string& path, const std::string& key,
                       double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& value = obj.at(key);
  if (!value.is_number()) throw ConfigError(path + "." + key, "expected a number");
  return value.get<double>();
}

std::int64_t optional_integer(const json& obj, const std::string& path, const std::string& key,
                              std::int64_t fallback) {
  if (!obj.contains(key)) return fallback;
  const json& value = obj.at(key);
  if (!value.is_number_integer()) throw ConfigError(path + "." + key, "expected an integer");
  return value.get<std::int64_t>();
}

std::string optional_string(const json& obj, const std::string& path, const std::string& key,
                            const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  const json& value = obj.at(key);
  if (!value.is_string()) throw ConfigError(path + "." + key, "expected a string");
  return value.get<std::string>();
}

bool optional_bool(const json& obj, const std::string& path, const std::string& key,
                   bool fallback) {
  if (!obj.contains(key)) return fallback;
  const json& value = obj.at(key);
  if (!value.is_boolean()) throw ConfigError(path + "." + key, "expected a boolean");
  return value.get<bool>();
}

std::vector<int> integer_array(const json& obj, const std::string& path, const std::string& key,
                               int K) {
  const std::string field = path + "." + key;
  if (!obj.contains(key)) throw ConfigError(field, "missing required field");
  const json& value = obj.at(key);
  if (value.is_number_integer()) {
    return std::vector<int>(static_cast<std::size_t>(K), value.get<int>());
  }
  if (!value.is_array()) throw ConfigError(field, "expected an integer or an array of integers");
  std::vector<int> out;
  out.reserve(value.size());
  for (const json& item : value) {
    if (!item.is_number_integer()) throw ConfigError(field, "expected integer entries");
    out.push_back(item.get<int>());
  }
  return out;
}

// Axes an optimize or ergodic sweep may vary, and where they live.
enum class AxisKind { System, Power, RunInteger };

AxisKind classify_axis(const std::string& axis) {
  if (axis == "rho_db" || axis == "R_D" || axis == "alpha" || axis == "K") return AxisKind::System;
  if (axis == "eta" || axis == "P_c" || axis == "P_RF" || axis == "P_T" || axis == "N_0") {
    return AxisKind::Power;
  }
  if (axis == "trials" || axis == "gcq_nodes") return AxisKind::RunInteger;
  throw ConfigError("run.sweep.axis", "unknown sweep axis '" + axis + "'");
}

bool integer_axis(const std::string& axis) {
  return axis == "K" || axis == "trials" || axis == "gcq_nodes";
}

json canonical_json(const Scenario& s) {
  json out;
  out["name"] = s.name;
  json system;
  system["M"] = s.system.M;
  system["K"] = s.system.K;
  system["R_D"] = s.system.R_D;
  system["alpha"] = s.system.alpha;
  system["rho_db"] = s.rho_db;
  system["seed"] = s.system.seed;
  system["placement"] =
      s.system.placement == PlacementModel::UniformArea ? "uniform_area" : "uniform_radius";
  system["effective_gain"] =
      s.effective_gain == EffectiveGainRule::MaxAntenna ? "max" : "sum";
  out["system"] = system;
  if (s.allocation.explicit_gamma) {
    out["allocation"] = json{{"gamma", s.allocation.gamma}};
  } else {
    out["allocation"] = json{{"rule", s.allocation.rule}};
  }
  if (s.power) {
    out["power"] = json{{"eta", s.power->eta},
                        {"P_c", s.power->P_c},
                        {"P_RF", s.power->P_RF},
                        {"P_T", s.power->P_T},
                        {"N_0", s.power->N_0}};
  }
  if (s.budget) {
    out["budget"] = json{{"N_bs_a", s.budget->N_bs_a},
                         {"N_bs_rf", s.budget->N_bs_rf},
                         {"N_k_b_a", s.budget->N_k_b_a},
                         {"N_k_c_ue", s.budget->N_k_c_ue},
                         {"N_k_c_rf", s.budget->N_k_c_rf}};
  }
  json run;
  run["trials"] = s.run.trials;
  run["gcq_nodes"] = s.run.gcq_nodes;
  run["mc_partitions"] = s.run.mc_partitions;
  run["ordered_mc"] = s.run.ordered_mc;
  run["tolerances"] = json{{"residual", s.run.tolerances.residual},
                           {"power", s.run.tolerances.power},
                           {"quadrature", s.run.tolerances.quadrature}};
  if (s.run.sweep) {
    run["sweep"] = json{{"axis", s.run.sweep->axis},
                        {"values", s.run.sweep->values},
                        {"mode", s.run.sweep->mode}};
  }
  out["run"] = run;
  return out;
}

Scenario parse_scenario_json(const json& root) {
  if (!root.is_object()) throw ConfigError("scenario", "top level must be an object");
  reject_unknown_keys(root, "", {"name", "system", "allocation", "power", "budget", "run"});

  Scenario s;
  if (root.contains("name")) {
    if (!root.at("name").is_string()) throw ConfigError("name", "expected a string");
    s.name = root.at("name").get<std::string>();
  }

  const json& system = require_object(root, "system");
  reject_unknown_keys(system, "system",
                      {"M", "K", "R_D", "alpha", "rho_db", "seed", "placement", "effective_gain"});
  s.system.M = static_cast<int>(optional_integer(system, "system", "M", 1));
  {
    const std::string field = "system.K";
    if (!system.contains("K")) throw ConfigError(field, "missing required field");
    if (!system.at("K").is_number_integer()) throw ConfigError(field, "expected an integer");
    s.system.K = system.at("K").get<int>();
  }
  s.system.R_D = require_number(system, "system", "R_D");
  s.system.alpha = require_number(system, "system", "alpha");
  s.rho_db = require_number(system, "system", "rho_db");
  s.system.rho = std::pow(10.0, s.rho_db / 10.0);
  if (system.contains("seed")) {
    const json& seed = system.at("seed");
    if (!seed.is_number_integer() ||
        (!seed.is_number_unsigned() && seed.get<std::int64_t>() < 0)) {
      throw ConfigError("system.seed", "expected a nonnegative integer");
    }
    s.system.seed = seed.get<std::uint64_t>();
  }
  {
    const std::string placement = optional_string(system, "system", "placement", "uniform_area");
    if (placement == "uniform_area") {
      s.system.placement = PlacementModel::UniformArea;
    } else if (placement == "uniform_radius") {
      s.system.placement = PlacementModel::UniformRadius;
    } else {
      throw ConfigError("system.placement", "expected 'uniform_area' or 'uniform_radius'");
    }
  }
  {
    const std::string rule = optional_string(system, "system", "effective_gain", "max");
    if (rule == "max") {
      s.effective_gain = EffectiveGainRule::MaxAntenna;
    } else if (rule == "sum") {
      s.effective_gain = EffectiveGainRule::SumAntennas;
    } else {
      throw ConfigError("system.effective_gain", "expected 'max' or 'sum'");
    }
  }

  if (root.contains("allocation")) {
    const json& alloc = root.at("allocation");
    if (!alloc.is_object()) throw ConfigError("allocation", "expected an object");
    reject_unknown_keys(alloc, "allocation", {"rule", "gamma"});
    if (alloc.contains("gamma") && alloc.contains("rule")) {
      throw ConfigError("allocation", "give either 'rule' or 'gamma', not both");
    }
    if (alloc.contains("gamma")) {
      const json& gamma = alloc.at("gamma");
      if (!gamma.is_array()) throw ConfigError("allocation.gamma", "expected an array of numbers");
      s.allocation.explicit_gamma = true;
      for (const json& item : gamma) {
        if (!item.is_number()) throw ConfigError("allocation.gamma", "expected numeric entries");
        s.allocation.gamma.push_back(item.get<double>());
      }
    } else {
      const std::string rule = optional_string(alloc, "allocation", "rule", "linear");
      if (rule != "linear" && rule != "uniform") {
        throw ConfigError("allocation.rule", "expected 'linear' or 'uniform'");
      }
      s.allocation.rule = rule;
    }
  }

  if (root.contains("power")) {
    const json& power = require_object(root, "power");
    reject_unknown_keys(power, "power", {"eta", "P_c", "P_RF", "P_T", "N_0"});
    PowerModel pm;
    pm.eta = optional_number(power, "power", "eta", 1.0);
    pm.P_c = optional_number(power, "power", "P_c", 0.0);
    pm.P_RF = optional_number(power, "power", "P_RF", 0.0);
    pm.P_T = require_number(power, "power", "P_T");
    pm.N_0 = optional_number(power, "power", "N_0", 1.0);
    s.power = pm;
  }

  if (root.contains("budget")) {
    const json& budget = require_object(root, "budget");
    reject_unknown_keys(budget, "budget", {"N_bs_a", "N_bs_rf", "N_k_b_a", "N_k_c_ue", "N_k_c_rf"});
    AntennaBudget b;
    b.N_bs_a = static_cast<int>(optional_integer(budget, "budget", "N_bs_a", s.system.K));
    b.N_bs_rf = static_cast<int>(optional_integer(budget, "budget", "N_bs_rf", s.system.K));
    b.N_k_b_a = budget.contains("N_k_b_a")
                    ? integer_array(budget, "budget", "N_k_b_a", s.system.K)
                    : std::vector<int>(static_cast<std::size_t>(s.system.K), 1);
    b.N_k_c_ue = budget.contains("N_k_c_ue")
                     ? integer_array(budget, "budget", "N_k_c_ue", s.system.K)
                     : std::vector<int>(static_cast<std::size_t>(s.system.K), 1);
    b.N_k_c_rf = budget.contains("N_k_c_rf") ? integer_array(budget, "budget", "N_k_c_rf", s.system.K)
                                             : b.N_k_b_a;
    s.budget = b;
  }

  if (root.contains("run")) {
    const json& run = require_object(root, "run");
    reject_unknown_keys(run, "run",
                        {"trials", "gcq_nodes", "mc_partitions", "ordered_mc", "tolerances", "sweep"});
    s.run.trials = optional_integer(run, "run", "trials", s.run.trials);
    s.run.gcq_nodes = static_cast<int>(optional_integer(run, "run", "gcq_nodes", s.run.gcq_nodes));
    s.run.mc_partitions =
        static_cast<int>(optional_integer(run, "run", "mc_partitions", s.run.mc_partitions));
    s.run.ordered_mc = optional_bool(run, "run", "ordered_mc", false);
    if (run.contains("tolerances")) {
      const json& tol = require_object(run, "tolerances");
      reject_unknown_keys(tol, "run.tolerances", {"residual", "power", "quadrature"});
      s.run.tolerances.residual =
          optional_number(tol, "run.tolerances", "residual", s.run.tolerances.residual);
      s.run.tolerances.power =
          optional_number(tol, "run.tolerances", "power", s.run.tolerances.power);
      s.run.tolerances.quadrature =
          optional_number(tol, "run.tolerances", "quadrature", s.run.tolerances.quadrature);
    }
    if (run.contains("sweep")) {
      const json& sweep = run.at("sweep");
      if (!sweep.is_object()) throw ConfigError("run.sweep", "expected an object");
      reject_unknown_keys(sweep, "run.sweep", {"axis", "values", "mode"});
      SweepSpec spec;
      if (!sweep.contains("axis")) throw ConfigError("run.sweep.axis", "missing required field");
      if (!sweep.at("axis").is_string()) throw ConfigError("run.sweep.axis", "expected a string");
      spec.axis = sweep.at("axis").get<std::string>();
      if (!sweep.contains("values")) throw ConfigError("run.sweep.values", "missing required field");
      if (!sweep.at("values").is_array()) {
        throw ConfigError("run.sweep.values", "expected an array of numbers");
      }
      for (const json& item : sweep.at("values")) {
        if (!item.is_number()) throw ConfigError("run.sweep.values", "expected numeric entries");
        spec.values.push_back(item.get<double>());
      }
      if (!sweep.contains("mode")) throw ConfigError("run.sweep.mode", "missing required field");
      if (!sweep.at("mode").is_string()) throw ConfigError("run.sweep.mode", "expected a string");
      spec.mode = sweep.at("mode").get<std::string>();
      if (spec.mode != "ergodic" && spec.mode != "optimize") {
        throw ConfigError("run.sweep.mode", "expected 'ergodic' or 'optimize'");
      }
      if (spec.values.empty()) throw ConfigError("run.sweep.values", "sweep list must not be empty");
      const AxisKind kind = classify_axis(spec.axis);
      if (kind == AxisKind::Power && !s.power) {
        throw ConfigError("power", "required when sweeping '" + spec.axis + "'");
      }
      if (integer_axis(spec.axis)) {
        for (const double v : spec.values) {
          if (v != std::floor(v)) {
            throw ConfigError("run.sweep.values", "axis '" + spec.axis + "' takes integer values");
          }
        }
      }
      if (spec.axis == "K") {
        if (s.allocation.explicit_gamma) {
          throw ConfigError("allocation", "explicit gamma cannot be combined with a K sweep");
        }
        if (s.budget) {
          throw ConfigError("budget", "explicit budget cannot be combined with a K sweep");
        }
      }
      s.run.sweep = std::move(spec);
    }
  }

  // Structure is sound; now enforce value invariants (domain errors).
  s.system.validate();
  if (s.run.trials < 1) throw std::domain_error("run.trials must be >= 1");
  if (s.run.gcq_nodes < 1) throw std::domain_error("run.gcq_nodes must be >= 1");
  if (s.run.mc_partitions < 1) throw std::domain_error("run.mc_partitions must be >= 1");
  if (!(s.run.tolerances.residual > 0.0) || !(s.run.tolerances.power > 0.0) ||
      !(s.run.tolerances.quadrature > 0.0)) {
    throw std::domain_error("run.tolerances entries must be positive");
  }
  if (s.allocation.explicit_gamma) {
    if (s.allocation.gamma.size() != static_cast<std::size_t>(s.system.K)) {
      throw std::domain_error("allocation.gamma must have K=" + std::to_string(s.system.K) +
                              " entries, got " + std::to_string(s.allocation.gamma.size()));
    }
    PowerAllocation::from_coefficients(s.allocation.gamma);  // value checks
  }
  if (s.power) s.power->validate();
  if (s.budget) s.budget->validate(s.system.K);
  if (s.run.sweep) {
    const auto& values = s.run.sweep->values;
    for (std::size_t i = 1; i < values.size(); ++i) {
      if (!(values[i] > values[i - 1])) {
        throw std::domain_error("run.sweep.values must be strictly increasing");
      }
    }
  }

  s.resolved_json = canonical_json(s).dump();
  s.hash = fnv1a64(s.resolved_json);
  return s;
}

}  // namespace

PowerAllocation AllocationSpec::resolve(int K) const {
  if (explicit_gamma) {
    if (gamma.size() != static_cast<std::size_t>(K)) {
      throw std::domain_error("allocation.gamma must have K=" + std::to_string(K) +
                              " entries, got " + std::to_string(gamma.size()));
    }
    return PowerAllocation::from_coefficients(gamma);
  }
  return rule == "uniform" ? PowerAllocation::uniform(K) : PowerAllocation::linear_rule(K);
}

AntennaBudget Scenario::budget_for(int K) const {
  if (budget) return *budget;
  return AntennaBudget::default_for(K);
}

Scenario parse_scenario_text(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& err) {
    throw ConfigError("json", err.what());
  }
  return parse_scenario_json(root);
}

Scenario load_scenario(const std::string& path, const CliOverrides& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("scenario", "cannot read file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();

  json root;
  try {
    root = json::parse(buffer.str());
  } catch (const json::parse_error& err) {
    throw ConfigError("json", err.what());
  }
  if (!root.is_object()) throw ConfigError("scenario", "top level must be an object");
  if (overrides.seed) root["system"]["seed"] = *overrides.seed;
  if (overrides.trials) root["run"]["trials"] = *overrides.trials;
  if (overrides.gcq_nodes) root["run"]["gcq_nodes"] = *overrides.gcq_nodes;
  return parse_scenario_json(root);
}

Scenario scenario_at_sweep_point(const Scenario& base, const std::string& axis, double value,
                                 std::size_t point_index) {
  Scenario point = base;
  point.run.sweep.reset();
  const AxisKind kind = classify_axis(axis);
  if (kind == AxisKind::Power && !point.power) {
    throw ConfigError("power", "required when sweeping '" + axis + "'");
  }
  if (axis == "rho_db") {
    point.rho_db = value;
    point.system.rho = std::pow(10.0, value / 10.0);
  } else if (axis == "R_D") {
    point.system.R_D = value;
  } else if (axis == "alpha") {
    point.system.alpha = value;
  } else if (axis == "K") {
    point.system.K = static_cast<int>(value);
  } else if (axis == "eta") {
    point.power->eta = value;
  } else if (axis == "P_c") {
    point.power->P_c = value;
  } else if (axis == "P_RF") {
    point.power->P_RF = value;
  } else if (axis == "P_T") {
    point.power->P_T = value;
  } else if (axis == "N_0") {
    point.power->N_0 = value;
  } else if (axis == "trials") {
    point.run.trials = static_cast<std::int64_t>(value);
  } else if (axis == "gcq_nodes") {
    point.run.gcq_nodes = static_cast<int>(value);
  }
  point.system.seed = derive_stream_seed(base.system.seed, point_index);
  point.system.validate();
  if (point.power) point.power->validate();
  return point;
}

}  // namespace noma
