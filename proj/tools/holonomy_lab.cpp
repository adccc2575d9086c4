#include <fstream>
#include <iostream>
#include <map>

#include "CLI11.hpp"

#include "holonomy/runner.hpp"

namespace {

const char* kColumns =
    "Output columns (CSV, header first, rows ordered by scenario):\n"
    "  scenario_id  scenario id from the config (fuzz: <suite>-<index>)\n"
    "  lhs, rhs     the two sides of the check, see below\n"
    "  slack        rhs - lhs\n"
    "  tolerance    allowed violation; inequalities pass when lhs <= rhs + tolerance,\n"
    "               equalities when |slack| <= tolerance\n"
    "  pass         true or false\n"
    "  N            transport steps (axial-gauge: steps per line)\n"
    "  grid         quadrature grid <radial>x<angular>, or nodes per axis\n"
    "  seed         random seed of the scenario (0 when unused)\n"
    "With --details two more columns follow: note and details (key=value;...).\n";

const std::map<std::string, std::string>& row_meaning() {
  static const std::map<std::string, std::string> m = {
      {"transport", "Parallel transport along `path`. lhs = largest unitarity defect of any step, rhs = 1e-12."},
      {"amplitude", "Holonomy amplitude of the closed `path`. lhs = amplitude, rhs = `expect` (tolerance "
                    "numerics.tolerance, default 1e-5); without `expect` the row reports the value only."},
      {"curvature-mass", "Integral of |sigma^* Omega| over the unit disk for `surface` (default identity-disk). "
                         "lhs = mass, rhs = `expect` as for amplitude. Default grid 256x256."},
      {"verify-theorem", "lhs = amplitude of the boundary loop of `surface`, rhs = its curvature mass; tolerance "
                         "1e-5 + 1e-3 rhs. Default grid 256x256."},
      {"verify-corollary", "lhs = amplitude of `path`, rhs = length^2 max|Omega| / (4 pi) with the maximum over "
                           "the filling `surface`; tolerance 1e-5 + 1e-3 rhs. Default grid 64x128."},
      {"verify-lemma", "Radial derivative of the circle holonomy at numerics.radius against the curvature "
                       "integral, both sign branches. lhs = smaller residual, rhs = 0, tolerance "
                       "10 (h_r^2 + 1/N^2); h_r defaults to 1e-4. --details shows both residuals."},
      {"verify-radial", "lhs = |ampl(r+h) - ampl(r-h)| / 2h at numerics.radius, rhs = r times the circle "
                        "integral of |Omega|; tolerance 1e-4 + 10 h^2 + 100/N^2, h_r defaults to 1e-3."},
      {"sweep-radius", "One row per entry of numerics.radii: lhs = amplitude of the circle, rhs = curvature "
                       "mass of the disk of that radius; tolerance 1e-5 + 1e-3 rhs. Default grid 128x128."},
      {"axial-gauge", "Grid axial gauge along numerics.direction with numerics.axial_grid nodes per axis "
                      "(default 64). lhs = residual |v _| omega'| at the nodes, rhs = 0, tolerance "
                      "numerics.tolerance (default 1e-5)."},
      {"fuzz", "Seeded random SU2 scenarios. Suites: theorem (default), radial, subadditivity, conjugation, "
               "gauge-invariance. Works without --config; the config's `fuzz` table supplies defaults. "
               "Default count 200, seed 42, grid 64x128."},
  };
  return m;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace holonomy;

  CLI::App app{"holonomy_lab: holonomy amplitude and curvature checks driven by scenario configs"};
  app.require_subcommand(1);
  app.footer(std::string("\n") + kColumns + "\nExit status: 0 all rows pass, 1 a check failed, 2 configuration "
             "or scenario error, 3 cut locus or numerical breakdown.\nHOLONOMY_LAB_THREADS limits parallelism.");

  std::string config_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> count;
  std::optional<int> steps;
  std::optional<std::string> grid;
  std::optional<std::string> suite;
  bool details = false;

  for (const auto& name : subcommands()) {
    auto* sub = app.add_subcommand(name, row_meaning().at(name));
    sub->footer(std::string("\n") + row_meaning().at(name) + "\n\n" + kColumns);
    auto* config = sub->add_option("--config", config_path, "scenario config (JSON)");
    if (name != "fuzz") config->required();
    sub->add_option("--out", out_path, "write the CSV here instead of standard output");
    sub->add_option("--seed", seed, "seed for fuzz and random-polynomial connections");
    sub->add_option("--count", count, "number of fuzz scenarios")->check(CLI::NonNegativeNumber);
    sub->add_option("--steps", steps, "transport steps N")->check(CLI::PositiveNumber);
    sub->add_option("--grid", grid, "quadrature grid <radial>x<angular>");
    if (name == "fuzz") sub->add_option("--suite", suite, "fuzz suite");
    sub->add_flag("--details", details, "append note and details columns");
  }

  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    RunOptions options;
    options.seed = seed;
    options.count = count;
    options.steps = steps;
    options.suite = suite;
    if (grid) options.grid = parse_grid(*grid, "--grid");
    options.threads = thread_limit();

    LabConfig config;
    if (!config_path.empty()) config = load_config(config_path);
    const auto rows = run_subcommand(command, config, options);

    if (out_path.empty()) {
      write_csv(std::cout, rows, details);
    } else {
      std::ofstream out(out_path, std::ios::binary);
      if (!out) {
        std::cerr << "error: cannot write " << out_path << '\n';
        return 2;
      }
      write_csv(out, rows, details);
    }
    const int status = exit_status(rows);
    if (status != 0) std::cerr << "holonomy_lab: at least one check failed\n";
    return status;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const ScenarioError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_status(e.code());
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_status(e.code());
  }
}
