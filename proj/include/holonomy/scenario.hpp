#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "holonomy/connection.hpp"
#include "holonomy/fuzz.hpp"
#include "holonomy/path.hpp"
#include "holonomy/verify.hpp"

namespace holonomy {

using Json = nlohmann::ordered_json;

/// Malformed or inconsistent configuration; `key()` is the offending path,
/// e.g. "scenarios[2].connection.B".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(key + ": " + message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

// Algebra elements are written as JSON: [theta] for U1, [a, b, c] for SU2 and
// a list of rows of a skew matrix for SO(n).

struct TermSpec {
  int component = 0;
  std::vector<int> powers;
  Json coefficient;
  bool operator==(const TermSpec&) const = default;
};

struct ConnectionSpec {
  std::string family;  // zero, constant-field, constant-coefficients, polynomial, gaussian-bump, random-polynomial
  std::optional<double> field_strength;
  std::optional<Json> generator;
  std::vector<Json> generators;
  std::vector<TermSpec> terms;
  std::vector<double> center;
  std::optional<double> width;
  std::optional<double> amplitude;
  std::optional<double> scale;
  std::optional<std::uint64_t> seed;
  bool operator==(const ConnectionSpec&) const = default;
};

struct ChartSpec {
  std::string type;  // box, ball
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<double> center;
  std::optional<double> radius;
  bool operator==(const ChartSpec&) const = default;
};

struct PathSpec {
  std::string family;  // circle, ellipse, segment, fourier, boundary
  std::vector<double> center;
  std::optional<double> radius;
  std::optional<double> a;
  std::optional<double> b;
  std::vector<double> from;
  std::vector<double> to;
  std::vector<std::vector<double>> cos;
  std::vector<std::vector<double>> sin;
  bool operator==(const PathSpec&) const = default;
};

struct SurfaceSpec {
  std::string family;  // identity-disk, scaled-disk, ellipse, linear, quadratic
  std::vector<double> center;
  std::optional<double> radius;
  std::optional<double> a;
  std::optional<double> b;
  std::vector<double> offset;
  std::vector<std::vector<double>> linear;
  std::vector<double> q_xx;
  std::vector<double> q_xy;
  std::vector<double> q_yy;
  bool operator==(const SurfaceSpec&) const = default;
};

struct PhaseTermSpec {
  std::vector<int> powers;
  double coefficient = 0.0;
  bool operator==(const PhaseTermSpec&) const = default;
};

struct GaugeFactorSpec {
  Json generator;
  std::vector<PhaseTermSpec> phase;
  bool operator==(const GaugeFactorSpec&) const = default;
};

struct GaugeSpec {
  std::string family;  // identity, constant, exp-product, axial-line
  std::optional<Json> element;  // algebra element X of the constant gauge exp(X)
  std::vector<GaugeFactorSpec> factors;
  std::vector<double> direction;
  std::optional<int> line_steps;
  bool operator==(const GaugeSpec&) const = default;
};

struct NumericsSpec {
  std::optional<int> steps;
  std::optional<PolarGrid> grid;
  std::optional<double> h_r;
  std::optional<double> radius;
  std::vector<double> radii;
  std::optional<std::uint64_t> seed;
  std::optional<int> axial_grid;
  std::vector<double> direction;
  std::optional<int> line_steps;
  std::optional<int> angular_nodes;
  std::optional<double> tolerance;
  bool operator==(const NumericsSpec&) const = default;
};

struct ScenarioConfig {
  std::string id;
  std::string group;
  ConnectionSpec connection;
  ChartSpec chart;
  std::optional<PathSpec> path;
  std::optional<PathSpec> path2;
  std::optional<SurfaceSpec> surface;
  std::optional<GaugeSpec> gauge;
  NumericsSpec numerics;
  std::optional<double> expect;
  bool operator==(const ScenarioConfig&) const = default;
};

struct FuzzSpec {
  std::optional<std::string> suite;
  std::optional<int> count;
  std::optional<std::uint64_t> seed;
  std::optional<int> steps;
  std::optional<PolarGrid> grid;
  bool operator==(const FuzzSpec&) const = default;
};

struct LabConfig {
  std::vector<ScenarioConfig> scenarios;
  std::optional<FuzzSpec> fuzz;
  bool operator==(const LabConfig&) const = default;
};

/// Throws ConfigError naming the offending key.
LabConfig parse_config(const Json& root);
LabConfig parse_config_text(const std::string& text);
LabConfig load_config(const std::string& file);
Json to_json(const LabConfig& config);

/// "<radial>x<angular>", e.g. "64x128". Throws ConfigError under `key`.
PolarGrid parse_grid(const std::string& text, const std::string& key = "grid");

/// Objects built from a scenario; failures raise ConfigError under the
/// scenario's key path.
struct BuiltScenario {
  GroupKind kind;
  Connection connection;
  std::optional<Path> path;
  std::optional<Path> path2;
  std::optional<Surface> surface;
  std::optional<GaugeField> gauge;
};

BuiltScenario build_scenario(const ScenarioConfig& scenario, const std::string& key);

AlgebraElement parse_algebra(GroupKind kind, const Json& value, const std::string& key);
Json algebra_to_json(const AlgebraElement& x);

}  // namespace holonomy
