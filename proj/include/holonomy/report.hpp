#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace holonomy {

/// Outcome of one numerical check. `slack` is always rhs - lhs; for
/// identities the check passes when |slack| <= tolerance, for inequalities
/// lhs <= rhs when slack >= -tolerance.
struct VerificationReport {
  std::string scenario;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  int steps = 0;
  std::string grid;
  std::uint64_t seed = 0;
  double drift = 0.0;
  std::string note;
  /// Extra named quantities, kept ordered for deterministic output.
  std::map<std::string, double> details;
};

inline VerificationReport inequality_report(std::string scenario, double lhs, double rhs, double tolerance) {
  VerificationReport r;
  r.scenario = std::move(scenario);
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = rhs - lhs;
  r.tolerance = tolerance;
  r.pass = lhs <= rhs + tolerance;
  return r;
}

inline VerificationReport equality_report(std::string scenario, double lhs, double rhs, double tolerance) {
  VerificationReport r = inequality_report(std::move(scenario), lhs, rhs, tolerance);
  r.pass = (r.slack <= tolerance) && (r.slack >= -tolerance);
  return r;
}

}  // namespace holonomy
