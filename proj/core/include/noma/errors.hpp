#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace noma {

// Structural problems in a scenario file: missing or unknown fields, wrong
// types, unreadable input. Carries the offending field name so callers can
// point at it.
class ConfigError : public std::runtime_error {
public:
  ConfigError(std::string field, const std::string& detail)
      : std::runtime_error("config error: field '" + field + "': " + detail),
        field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

private:
  std::string field_;
};

// Empty feasible set for the power/antenna constraint system. Carries the
// name of the first violated constraint (C1..C4).
class FeasibilityError : public std::runtime_error {
public:
  FeasibilityError(std::string constraint, const std::string& detail)
      : std::runtime_error("infeasible: " + constraint + ": " + detail),
        constraint_(std::move(constraint)) {}

  const std::string& constraint() const noexcept { return constraint_; }

private:
  std::string constraint_;
};

// An iterative numeric routine exhausted its budget before reaching its
// tolerance. The message includes the diagnostics available at that point.
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace noma
