#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "holonomy/report.hpp"
#include "holonomy/verify.hpp"

namespace holonomy {

enum class FuzzSuite { Theorem, Radial, Subadditivity, Conjugation, GaugeInvariance };

std::string to_string(FuzzSuite suite);
/// "theorem", "radial", "subadditivity", "conjugation", "gauge-invariance".
FuzzSuite parse_fuzz_suite(const std::string& name);

struct FuzzOptions {
  FuzzSuite suite = FuzzSuite::Theorem;
  std::uint64_t seed = 42;
  int count = 200;
  int steps = kDefaultSteps;
  PolarGrid grid{64, 128};
  int threads = 1;
};

/// One random scenario of a suite, fully determined by (suite, seed, index).
/// Connections are random su(2) polynomials of degree <= 2 on the unit disk.
VerificationReport run_fuzz_scenario(const FuzzOptions& options, int index);

/// Reports of scenarios 0 .. count-1 in index order.
std::vector<VerificationReport> run_fuzz(const FuzzOptions& options);

/// Evaluates task(0 .. count-1) on up to `threads` workers and returns the
/// results in index order. The exception of the lowest failing index is
/// rethrown after all workers finish.
std::vector<VerificationReport> run_indexed(int count, int threads,
                                            const std::function<VerificationReport(int)>& task);

}  // namespace holonomy
