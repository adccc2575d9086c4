#include "holonomy/fuzz.hpp"

#include <atomic>
#include <cstdio>
#include <exception>
#include <thread>

#include "holonomy/amplitude.hpp"
#include "holonomy/random.hpp"

namespace holonomy {

namespace {

Chart unit_disk() { return Chart::ball(Vector::Zero(2), 1.0); }

std::string scenario_name(FuzzSuite suite, int index) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d", index);
  return to_string(suite) + "-" + buf;
}

}  // namespace

std::string to_string(FuzzSuite suite) {
  switch (suite) {
    case FuzzSuite::Theorem: return "theorem";
    case FuzzSuite::Radial: return "radial";
    case FuzzSuite::Subadditivity: return "subadditivity";
    case FuzzSuite::Conjugation: return "conjugation";
    case FuzzSuite::GaugeInvariance: return "gauge-invariance";
  }
  return "theorem";
}

FuzzSuite parse_fuzz_suite(const std::string& name) {
  for (auto suite : {FuzzSuite::Theorem, FuzzSuite::Radial, FuzzSuite::Subadditivity, FuzzSuite::Conjugation,
                     FuzzSuite::GaugeInvariance}) {
    if (to_string(suite) == name) return suite;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown fuzz suite '" + name + "'");
}

VerificationReport run_fuzz_scenario(const FuzzOptions& options, int index) {
  const std::uint64_t seed = scenario_seed(options.seed, static_cast<std::uint64_t>(index));
  Rng rng(seed);
  const Connection conn = random_su2_polynomial_connection(rng, unit_disk());
  VerificationReport report;
  switch (options.suite) {
    case FuzzSuite::Theorem:
      report = check_theorem(conn, Surface::identity_disk(), options.grid, options.steps);
      break;
    case FuzzSuite::Radial: {
      const double r = rng.uniform(0.2, 0.8);
      report = check_radial_estimate(conn, r, 1e-3, options.steps, options.grid.angular);
      report.details["radius"] = r;
      break;
    }
    case FuzzSuite::Subadditivity: {
      const Vector base = rng.uniform_vector(2, -0.2, 0.2);
      const Path gamma = random_loop(rng, base, 0.08);
      const Path eta = random_loop(rng, base, 0.08);
      report = check_subadditivity(conn, gamma, eta, options.steps);
      break;
    }
    case FuzzSuite::Conjugation: {
      const Vector base = rng.uniform_vector(2, -0.2, 0.2);
      const Path gamma = random_loop(rng, base, 0.08);
      const Path eta = Path::segment(base, base + rng.uniform_vector(2, -0.25, 0.25));
      report = check_conjugation_invariance(conn, gamma, eta, options.steps);
      break;
    }
    case FuzzSuite::GaugeInvariance: {
      const GaugeField gauge = random_su2_gauge(rng);
      const Path gamma = random_loop(rng, rng.uniform_vector(2, -0.2, 0.2), 0.08);
      report = check_gauge_invariance(conn, gauge, gamma, options.steps);
      break;
    }
  }
  report.scenario = scenario_name(options.suite, index);
  report.seed = seed;
  return report;
}

std::vector<VerificationReport> run_fuzz(const FuzzOptions& options) {
  if (options.count < 0) throw Error(ErrorCode::InvalidArgument, "fuzz count must be non-negative");
  return run_indexed(options.count, options.threads, [&](int i) { return run_fuzz_scenario(options, i); });
}

std::vector<VerificationReport> run_indexed(int count, int threads,
                                            const std::function<VerificationReport(int)>& task) {
  std::vector<VerificationReport> out(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < count; i = next++) {
      try {
        out[i] = task(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int workers = std::max(1, std::min(threads, count));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace holonomy
