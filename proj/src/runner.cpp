#include "holonomy/runner.hpp"

#include <cstdio>
#include <cstdlib>
#include <functional>
#include <thread>

#include "holonomy/amplitude.hpp"
#include "holonomy/fuzz.hpp"
#include "holonomy/gauge_axial.hpp"
#include "holonomy/transport.hpp"
#include "holonomy/verify.hpp"

namespace holonomy {

namespace {

constexpr double kDefaultExpectTolerance = 1e-5;
constexpr double kDefaultAxialTolerance = 1e-5;
constexpr double kDriftBound = 1e-12;

struct Context {
  const ScenarioConfig& config;
  const BuiltScenario& built;
  const RunOptions& options;
  std::string key;

  int steps() const { return options.steps.value_or(config.numerics.steps.value_or(kDefaultSteps)); }
  PolarGrid grid(PolarGrid fallback) const { return options.grid.value_or(config.numerics.grid.value_or(fallback)); }
  std::uint64_t seed() const {
    if (config.connection.seed) return *config.connection.seed;
    return config.numerics.seed.value_or(0);
  }
  const Path& path() const {
    if (!built.path) throw ConfigError(key + ".path", "this subcommand needs a path");
    return *built.path;
  }
  Surface surface() const { return built.surface.value_or(Surface::identity_disk()); }
  double radius() const {
    if (!config.numerics.radius) throw ConfigError(key + ".numerics.radius", "missing required key");
    return *config.numerics.radius;
  }
};

VerificationReport compare_with_expect(const Context& ctx, const std::string& name, double value) {
  if (!ctx.config.expect) {
    auto r = equality_report(name, value, value, 0.0);
    r.note = "no expect given";
    return r;
  }
  return equality_report(name, value, *ctx.config.expect,
                         ctx.config.numerics.tolerance.value_or(kDefaultExpectTolerance));
}

using Handler = std::function<std::vector<VerificationReport>(const Context&)>;

std::vector<VerificationReport> one(VerificationReport r) { return {std::move(r)}; }

std::vector<VerificationReport> run_transport(const Context& ctx) {
  const auto result = parallel_transport(ctx.built.connection, ctx.path(), ctx.steps());
  auto r = inequality_report("transport", result.drift, kDriftBound, 0.0);
  r.steps = ctx.steps();
  r.drift = result.drift;
  r.details["max_step_angle"] = result.max_step_angle;
  r.details["distance_from_identity"] = distance_from_identity(result.final());
  return one(std::move(r));
}

std::vector<VerificationReport> run_amplitude(const Context& ctx) {
  const auto transport = parallel_transport(ctx.built.connection, ctx.path(), ctx.steps());
  if (!ctx.path().is_closed()) throw Error(ErrorCode::PathNotClosed, "amplitude requires a closed loop");
  const auto value = amplitude_of(transport, ctx.built.kind);
  auto r = compare_with_expect(ctx, "amplitude", value.value);
  r.steps = ctx.steps();
  r.drift = transport.drift;
  r.note = to_string(value.method);
  return one(std::move(r));
}

std::vector<VerificationReport> run_mass(const Context& ctx) {
  const PolarGrid grid = ctx.grid({256, 256});
  auto r = compare_with_expect(ctx, "curvature-mass", curvature_mass(ctx.built.connection, ctx.surface(), grid));
  r.grid = grid.label();
  return one(std::move(r));
}

std::vector<VerificationReport> run_theorem(const Context& ctx) {
  return one(check_theorem(ctx.built.connection, ctx.surface(), ctx.grid({256, 256}), ctx.steps()));
}

std::vector<VerificationReport> run_corollary(const Context& ctx) {
  return one(check_corollary_planar(ctx.built.connection, ctx.path(), ctx.built.surface, ctx.grid({64, 128}),
                                    ctx.steps()));
}

std::vector<VerificationReport> run_lemma(const Context& ctx) {
  return one(check_derivative_lemma(ctx.built.connection, ctx.radius(), ctx.steps(),
                                    ctx.config.numerics.h_r.value_or(1e-4)));
}

std::vector<VerificationReport> run_radial(const Context& ctx) {
  return one(check_radial_estimate(ctx.built.connection, ctx.radius(), ctx.config.numerics.h_r.value_or(1e-3),
                                   ctx.steps(), ctx.config.numerics.angular_nodes.value_or(1024)));
}

std::vector<VerificationReport> run_sweep(const Context& ctx) {
  if (ctx.config.numerics.radii.empty()) throw ConfigError(ctx.key + ".numerics.radii", "missing required key");
  auto rows = sweep_radius(ctx.built.connection, ctx.config.numerics.radii, ctx.steps(), ctx.grid({128, 128}));
  for (auto& r : rows) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "/r=%.6g", r.details["radius"]);
    r.scenario = ctx.config.id + buf;
  }
  return rows;
}

std::vector<VerificationReport> run_axial(const Context& ctx) {
  const auto& numerics = ctx.config.numerics;
  const int m = ctx.built.connection.dim();
  if (numerics.direction.empty()) throw ConfigError(ctx.key + ".numerics.direction", "missing required key");
  if (static_cast<int>(numerics.direction.size()) != m) {
    throw ConfigError(ctx.key + ".numerics.direction", "expected " + std::to_string(m) + " components");
  }
  const Vector v = Eigen::Map<const Vector>(numerics.direction.data(), m);
  const int nodes = numerics.axial_grid.value_or(64);
  const auto result = axial_gauge(ctx.built.connection, v, nodes, numerics.line_steps.value_or(kDefaultSteps));
  auto r = inequality_report("axial-gauge", result.residual, 0.0, numerics.tolerance.value_or(kDefaultAxialTolerance));
  r.steps = result.line_steps;
  r.grid = std::to_string(nodes) + "x" + std::to_string(nodes);
  return one(std::move(r));
}

const std::vector<std::pair<std::string, Handler>>& handlers() {
  static const std::vector<std::pair<std::string, Handler>> table = {
      {"transport", run_transport},       {"amplitude", run_amplitude},   {"curvature-mass", run_mass},
      {"verify-theorem", run_theorem},    {"verify-corollary", run_corollary}, {"verify-lemma", run_lemma},
      {"verify-radial", run_radial},      {"sweep-radius", run_sweep},    {"axial-gauge", run_axial},
  };
  return table;
}

std::vector<VerificationReport> run_fuzz_command(const LabConfig& config, const RunOptions& options) {
  FuzzOptions f;
  const FuzzSpec spec = config.fuzz.value_or(FuzzSpec{});
  const std::string suite = options.suite.value_or(spec.suite.value_or("theorem"));
  try {
    f.suite = parse_fuzz_suite(suite);
  } catch (const Error&) {
    throw ConfigError("fuzz.suite", "unknown suite \"" + suite + "\"");
  }
  f.seed = options.seed.value_or(spec.seed.value_or(42));
  f.count = options.count.value_or(spec.count.value_or(200));
  f.steps = options.steps.value_or(spec.steps.value_or(kDefaultSteps));
  f.grid = options.grid.value_or(spec.grid.value_or(PolarGrid{64, 128}));
  f.threads = options.threads;
  if (f.count < 0) throw ConfigError("fuzz.count", "count must be non-negative");
  try {
    return run_fuzz(f);
  } catch (const Error& e) {
    throw ScenarioError("fuzz", e.code(), e.what());
  }
}

void write_number(std::ostream& out, double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  out << buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& h : handlers()) out.push_back(h.first);
    out.push_back("fuzz");
    return out;
  }();
  return names;
}

std::vector<VerificationReport> run_subcommand(const std::string& name, const LabConfig& config,
                                               const RunOptions& options) {
  if (name == "fuzz") return run_fuzz_command(config, options);
  const Handler* handler = nullptr;
  for (const auto& h : handlers()) {
    if (h.first == name) handler = &h.second;
  }
  if (!handler) throw ConfigError("<subcommand>", "unknown subcommand \"" + name + "\"");
  if (config.scenarios.empty()) throw ConfigError("scenarios", "no scenarios to run");

  // Build everything first so configuration errors surface before any work.
  std::vector<ScenarioConfig> scenarios = config.scenarios;
  std::vector<BuiltScenario> built;
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    if (options.seed && scenarios[i].connection.family == "random-polynomial") scenarios[i].connection.seed = options.seed;
    built.push_back(build_scenario(scenarios[i], "scenarios[" + std::to_string(i) + "]"));
  }

  const int count = static_cast<int>(scenarios.size());
  std::vector<std::vector<VerificationReport>> per_scenario(count);
  std::vector<std::exception_ptr> errors(count);
  run_indexed(count, options.threads, [&](int i) {
    const Context ctx{scenarios[i], built[i], options, "scenarios[" + std::to_string(i) + "]"};
    try {
      per_scenario[i] = (*handler)(ctx);
      for (auto& r : per_scenario[i]) {
        if (name != "sweep-radius") r.scenario = scenarios[i].id;
        r.seed = ctx.seed();
      }
    } catch (const ConfigError&) {
      errors[i] = std::current_exception();
    } catch (const Error& e) {
      errors[i] = std::make_exception_ptr(ScenarioError(scenarios[i].id, e.code(), e.what()));
    }
    return VerificationReport{};
  });
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<VerificationReport> rows;
  for (auto& group : per_scenario) {
    for (auto& r : group) rows.push_back(std::move(r));
  }
  return rows;
}

void write_csv(std::ostream& out, const std::vector<VerificationReport>& rows, bool details) {
  out << "scenario_id,lhs,rhs,slack,tolerance,pass,N,grid,seed";
  if (details) out << ",note,details";
  out << '\n';
  for (const auto& r : rows) {
    out << csv_field(r.scenario) << ',';
    write_number(out, r.lhs);
    out << ',';
    write_number(out, r.rhs);
    out << ',';
    write_number(out, r.slack);
    out << ',';
    write_number(out, r.tolerance);
    out << ',' << (r.pass ? "true" : "false") << ',' << r.steps << ',' << csv_field(r.grid) << ',' << r.seed;
    if (details) {
      std::string extras;
      for (const auto& [k, v] : r.details) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        if (!extras.empty()) extras += ';';
        extras += k + "=" + buf;
      }
      out << ',' << csv_field(r.note) << ',' << csv_field(extras);
    }
    out << '\n';
  }
}

int exit_status(const std::vector<VerificationReport>& rows) {
  for (const auto& r : rows) {
    if (!r.pass) return 1;
  }
  return 0;
}

int exit_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::CutLocus:
    case ErrorCode::NumericalBreakdown:
    case ErrorCode::SingularInput:
      return 3;
    default:
      return 2;
  }
}

int thread_limit() {
  if (const char* env = std::getenv("HOLONOMY_LAB_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || n < 1 || n > 1024) {
      throw ConfigError("HOLONOMY_LAB_THREADS", std::string("expected a positive integer, got \"") + env + "\"");
    }
    return static_cast<int>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace holonomy
