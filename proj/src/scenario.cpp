#include "holonomy/scenario.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "holonomy/gauge_axial.hpp"
#include "holonomy/random.hpp"

namespace holonomy {

namespace {

// A JSON object together with its key path, for diagnostics.
class Node {
 public:
  Node(const Json& value, std::string path) : value_(value), path_(std::move(path)) {
    if (!value_.is_object()) throw ConfigError(path_, "expected an object");
  }

  const std::string& path() const { return path_; }
  std::string key(const std::string& name) const { return path_.empty() ? name : path_ + "." + name; }
  bool has(const std::string& name) const { return value_.contains(name); }
  const Json& raw(const std::string& name) const {
    if (!has(name)) throw ConfigError(key(name), "missing required key");
    return value_.at(name);
  }

  void allow(std::initializer_list<const char*> names) const {
    std::set<std::string> allowed(names.begin(), names.end());
    for (const auto& item : value_.items()) {
      if (!allowed.count(item.key())) throw ConfigError(key(item.key()), "unknown key");
    }
  }

  Node child(const std::string& name) const { return Node(raw(name), key(name)); }

  double number(const std::string& name) const {
    const Json& v = raw(name);
    if (!v.is_number()) throw ConfigError(key(name), "expected a number");
    return v.get<double>();
  }
  std::optional<double> opt_number(const std::string& name) const {
    if (!has(name)) return std::nullopt;
    return number(name);
  }
  int integer(const std::string& name) const {
    const Json& v = raw(name);
    if (!v.is_number_integer()) throw ConfigError(key(name), "expected an integer");
    return v.get<int>();
  }
  std::optional<int> opt_integer(const std::string& name) const {
    if (!has(name)) return std::nullopt;
    return integer(name);
  }
  std::optional<std::uint64_t> opt_seed(const std::string& name) const {
    if (!has(name)) return std::nullopt;
    const Json& v = raw(name);
    if (!v.is_number_unsigned()) throw ConfigError(key(name), "expected a non-negative integer");
    return v.get<std::uint64_t>();
  }
  std::string string(const std::string& name) const {
    const Json& v = raw(name);
    if (!v.is_string()) throw ConfigError(key(name), "expected a string");
    return v.get<std::string>();
  }
  std::vector<double> numbers(const std::string& name) const {
    if (!has(name)) return {};
    return number_list(raw(name), key(name));
  }
  std::vector<std::vector<double>> rows(const std::string& name) const {
    if (!has(name)) return {};
    const Json& v = raw(name);
    if (!v.is_array()) throw ConfigError(key(name), "expected a list of lists");
    std::vector<std::vector<double>> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(number_list(v[i], key(name) + "[" + std::to_string(i) + "]"));
    return out;
  }
  std::vector<int> integers(const std::string& name) const {
    const Json& v = raw(name);
    if (!v.is_array()) throw ConfigError(key(name), "expected a list of integers");
    std::vector<int> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number_integer()) throw ConfigError(key(name) + "[" + std::to_string(i) + "]", "expected an integer");
      out.push_back(v[i].get<int>());
    }
    return out;
  }
  std::optional<PolarGrid> opt_grid(const std::string& name) const {
    if (!has(name)) return std::nullopt;
    const Json& v = raw(name);
    if (!v.is_string()) throw ConfigError(key(name), "expected a string like \"64x128\"");
    return parse_grid(v.get<std::string>(), key(name));
  }

  template <typename F>
  auto list(const std::string& name, F&& parse) const {
    using T = decltype(parse(std::declval<const Json&>(), std::string()));
    std::vector<T> out;
    if (!has(name)) return out;
    const Json& v = raw(name);
    if (!v.is_array()) throw ConfigError(key(name), "expected a list");
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(parse(v[i], key(name) + "[" + std::to_string(i) + "]"));
    return out;
  }

  static std::vector<double> number_list(const Json& v, const std::string& key) {
    if (!v.is_array()) throw ConfigError(key, "expected a list of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number()) throw ConfigError(key + "[" + std::to_string(i) + "]", "expected a number");
      out.push_back(v[i].get<double>());
    }
    return out;
  }

 private:
  const Json& value_;
  std::string path_;
};

TermSpec parse_term(const Json& v, const std::string& key) {
  Node n(v, key);
  n.allow({"component", "powers", "coefficient"});
  return {n.integer("component"), n.integers("powers"), n.raw("coefficient")};
}

ConnectionSpec parse_connection(const Node& n) {
  n.allow({"family", "B", "generator", "generators", "terms", "center", "width", "amplitude", "scale", "seed"});
  ConnectionSpec c;
  c.family = n.string("family");
  c.field_strength = n.opt_number("B");
  if (n.has("generator")) c.generator = n.raw("generator");
  c.generators = n.list("generators", [](const Json& v, const std::string&) { return Json(v); });
  c.terms = n.list("terms", parse_term);
  c.center = n.numbers("center");
  c.width = n.opt_number("width");
  c.amplitude = n.opt_number("amplitude");
  c.scale = n.opt_number("scale");
  c.seed = n.opt_seed("seed");
  return c;
}

ChartSpec parse_chart(const Node& n) {
  n.allow({"type", "lower", "upper", "center", "radius"});
  ChartSpec c;
  c.type = n.string("type");
  c.lower = n.numbers("lower");
  c.upper = n.numbers("upper");
  c.center = n.numbers("center");
  c.radius = n.opt_number("radius");
  return c;
}

PathSpec parse_path(const Node& n) {
  n.allow({"family", "center", "radius", "a", "b", "from", "to", "cos", "sin"});
  PathSpec p;
  p.family = n.string("family");
  p.center = n.numbers("center");
  p.radius = n.opt_number("radius");
  p.a = n.opt_number("a");
  p.b = n.opt_number("b");
  p.from = n.numbers("from");
  p.to = n.numbers("to");
  p.cos = n.rows("cos");
  p.sin = n.rows("sin");
  return p;
}

SurfaceSpec parse_surface(const Node& n) {
  n.allow({"family", "center", "radius", "a", "b", "offset", "linear", "q_xx", "q_xy", "q_yy"});
  SurfaceSpec s;
  s.family = n.string("family");
  s.center = n.numbers("center");
  s.radius = n.opt_number("radius");
  s.a = n.opt_number("a");
  s.b = n.opt_number("b");
  s.offset = n.numbers("offset");
  s.linear = n.rows("linear");
  s.q_xx = n.numbers("q_xx");
  s.q_xy = n.numbers("q_xy");
  s.q_yy = n.numbers("q_yy");
  return s;
}

PhaseTermSpec parse_phase_term(const Json& v, const std::string& key) {
  Node n(v, key);
  n.allow({"powers", "coefficient"});
  return {n.integers("powers"), n.number("coefficient")};
}

GaugeFactorSpec parse_factor(const Json& v, const std::string& key) {
  Node n(v, key);
  n.allow({"generator", "phase"});
  return {n.raw("generator"), n.list("phase", parse_phase_term)};
}

GaugeSpec parse_gauge(const Node& n) {
  n.allow({"family", "element", "factors", "direction", "line_steps"});
  GaugeSpec g;
  g.family = n.string("family");
  if (n.has("element")) g.element = n.raw("element");
  g.factors = n.list("factors", parse_factor);
  g.direction = n.numbers("direction");
  g.line_steps = n.opt_integer("line_steps");
  return g;
}

NumericsSpec parse_numerics(const Node& n) {
  n.allow({"steps", "grid", "h_r", "radius", "radii", "seed", "axial_grid", "direction", "line_steps", "angular_nodes",
           "tolerance"});
  NumericsSpec s;
  s.steps = n.opt_integer("steps");
  s.grid = n.opt_grid("grid");
  s.h_r = n.opt_number("h_r");
  s.radius = n.opt_number("radius");
  s.radii = n.numbers("radii");
  s.seed = n.opt_seed("seed");
  s.axial_grid = n.opt_integer("axial_grid");
  s.direction = n.numbers("direction");
  s.line_steps = n.opt_integer("line_steps");
  s.angular_nodes = n.opt_integer("angular_nodes");
  s.tolerance = n.opt_number("tolerance");
  return s;
}

ScenarioConfig parse_scenario(const Json& v, const std::string& key) {
  Node n(v, key);
  n.allow({"id", "group", "connection", "chart", "path", "path2", "surface", "gauge", "numerics", "expect"});
  ScenarioConfig s;
  s.id = n.string("id");
  s.group = n.string("group");
  s.connection = parse_connection(n.child("connection"));
  s.chart = parse_chart(n.child("chart"));
  if (n.has("path")) s.path = parse_path(n.child("path"));
  if (n.has("path2")) s.path2 = parse_path(n.child("path2"));
  if (n.has("surface")) s.surface = parse_surface(n.child("surface"));
  if (n.has("gauge")) s.gauge = parse_gauge(n.child("gauge"));
  if (n.has("numerics")) s.numerics = parse_numerics(n.child("numerics"));
  s.expect = n.opt_number("expect");
  return s;
}

FuzzSpec parse_fuzz(const Node& n) {
  n.allow({"suite", "count", "seed", "steps", "grid"});
  FuzzSpec f;
  if (n.has("suite")) {
    f.suite = n.string("suite");
    try {
      parse_fuzz_suite(*f.suite);
    } catch (const Error& e) {
      throw ConfigError(n.key("suite"), "unknown suite '" + *f.suite + "'");
    }
  }
  f.count = n.opt_integer("count");
  f.seed = n.opt_seed("seed");
  f.steps = n.opt_integer("steps");
  f.grid = n.opt_grid("grid");
  return f;
}

// ------------------------------------------------------------- serializing

template <typename T>
void put(Json& j, const char* name, const std::optional<T>& v) {
  if (v) j[name] = *v;
}
template <typename T>
void put(Json& j, const char* name, const std::vector<T>& v) {
  if (!v.empty()) j[name] = v;
}
void put(Json& j, const char* name, const std::optional<PolarGrid>& v) {
  if (v) j[name] = v->label();
}

Json to_json(const ConnectionSpec& c) {
  Json j;
  j["family"] = c.family;
  put(j, "B", c.field_strength);
  put(j, "generator", c.generator);
  put(j, "generators", c.generators);
  if (!c.terms.empty()) {
    Json terms = Json::array();
    for (const auto& t : c.terms) terms.push_back({{"component", t.component}, {"powers", t.powers}, {"coefficient", t.coefficient}});
    j["terms"] = terms;
  }
  put(j, "center", c.center);
  put(j, "width", c.width);
  put(j, "amplitude", c.amplitude);
  put(j, "scale", c.scale);
  put(j, "seed", c.seed);
  return j;
}

Json to_json(const ChartSpec& c) {
  Json j;
  j["type"] = c.type;
  put(j, "lower", c.lower);
  put(j, "upper", c.upper);
  put(j, "center", c.center);
  put(j, "radius", c.radius);
  return j;
}

Json to_json(const PathSpec& p) {
  Json j;
  j["family"] = p.family;
  put(j, "center", p.center);
  put(j, "radius", p.radius);
  put(j, "a", p.a);
  put(j, "b", p.b);
  put(j, "from", p.from);
  put(j, "to", p.to);
  put(j, "cos", p.cos);
  put(j, "sin", p.sin);
  return j;
}

Json to_json(const SurfaceSpec& s) {
  Json j;
  j["family"] = s.family;
  put(j, "center", s.center);
  put(j, "radius", s.radius);
  put(j, "a", s.a);
  put(j, "b", s.b);
  put(j, "offset", s.offset);
  put(j, "linear", s.linear);
  put(j, "q_xx", s.q_xx);
  put(j, "q_xy", s.q_xy);
  put(j, "q_yy", s.q_yy);
  return j;
}

Json to_json(const GaugeSpec& g) {
  Json j;
  j["family"] = g.family;
  put(j, "element", g.element);
  if (!g.factors.empty()) {
    Json factors = Json::array();
    for (const auto& f : g.factors) {
      Json phase = Json::array();
      for (const auto& t : f.phase) phase.push_back({{"powers", t.powers}, {"coefficient", t.coefficient}});
      factors.push_back({{"generator", f.generator}, {"phase", phase}});
    }
    j["factors"] = factors;
  }
  put(j, "direction", g.direction);
  put(j, "line_steps", g.line_steps);
  return j;
}

Json to_json(const NumericsSpec& s) {
  Json j = Json::object();
  put(j, "steps", s.steps);
  put(j, "grid", s.grid);
  put(j, "h_r", s.h_r);
  put(j, "radius", s.radius);
  put(j, "radii", s.radii);
  put(j, "seed", s.seed);
  put(j, "axial_grid", s.axial_grid);
  put(j, "direction", s.direction);
  put(j, "line_steps", s.line_steps);
  put(j, "angular_nodes", s.angular_nodes);
  put(j, "tolerance", s.tolerance);
  return j;
}

// ----------------------------------------------------------------- building

Vector to_vector(const std::vector<double>& v) { return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size())); }

Vector require_point(const std::vector<double>& v, int dim, const std::string& key) {
  if (static_cast<int>(v.size()) != dim) {
    throw ConfigError(key, "expected " + std::to_string(dim) + " coordinates, got " + std::to_string(v.size()));
  }
  return to_vector(v);
}

double require(const std::optional<double>& v, const std::string& key) {
  if (!v) throw ConfigError(key, "missing required key");
  return *v;
}

Eigen::MatrixXd to_matrix(const std::vector<std::vector<double>>& rows, const std::string& key) {
  if (rows.empty()) throw ConfigError(key, "missing required key");
  Eigen::MatrixXd m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.front().size()) throw ConfigError(key, "rows differ in length");
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Chart build_chart(const ChartSpec& c, const std::string& key) {
  if (c.type == "box") {
    if (c.lower.empty()) throw ConfigError(key + ".lower", "missing required key");
    const Vector lower = to_vector(c.lower);
    const Vector upper = require_point(c.upper, static_cast<int>(c.lower.size()), key + ".upper");
    if (!(upper.array() > lower.array()).all()) throw ConfigError(key + ".upper", "upper corner must exceed lower");
    return Chart::box(lower, upper);
  }
  if (c.type == "ball") {
    if (c.center.empty()) throw ConfigError(key + ".center", "missing required key");
    const double radius = require(c.radius, key + ".radius");
    if (!(radius > 0)) throw ConfigError(key + ".radius", "radius must be positive");
    return Chart::ball(to_vector(c.center), radius);
  }
  throw ConfigError(key + ".type", "expected \"box\" or \"ball\", got \"" + c.type + "\"");
}

Connection build_connection(const ConnectionSpec& c, GroupKind kind, Chart chart, const std::string& key) {
  const int m = chart.dim();
  if (c.family == "zero") return zero_connection(kind, std::move(chart));
  if (c.family == "constant-field") {
    std::optional<AlgebraElement> generator;
    if (c.generator) generator = parse_algebra(kind, *c.generator, key + ".generator");
    if (!generator && kind.family() != GroupKind::Family::U1) {
      throw ConfigError(key + ".generator", "non-abelian constant-field needs a generator");
    }
    if (m != 2) throw ConfigError(key, "constant-field needs a planar chart");
    return constant_field_connection(require(c.field_strength, key + ".B"), std::move(chart), generator);
  }
  auto generators = [&] {
    std::vector<AlgebraElement> out;
    for (std::size_t i = 0; i < c.generators.size(); ++i) {
      out.push_back(parse_algebra(kind, c.generators[i], key + ".generators[" + std::to_string(i) + "]"));
    }
    if (static_cast<int>(out.size()) != m) {
      throw ConfigError(key + ".generators", "expected one generator per coordinate (" + std::to_string(m) + ")");
    }
    return out;
  };
  if (c.family == "constant-coefficients") return constant_coefficient_connection(generators(), std::move(chart));
  if (c.family == "polynomial") {
    std::vector<FormTerm> terms;
    for (std::size_t i = 0; i < c.terms.size(); ++i) {
      const std::string tkey = key + ".terms[" + std::to_string(i) + "]";
      const auto& t = c.terms[i];
      if (t.component < 0 || t.component >= m) throw ConfigError(tkey + ".component", "component out of range");
      if (static_cast<int>(t.powers.size()) != m) throw ConfigError(tkey + ".powers", "one power per coordinate");
      for (int p : t.powers) {
        if (p < 0) throw ConfigError(tkey + ".powers", "powers must be non-negative");
      }
      terms.push_back({t.component, t.powers, parse_algebra(kind, t.coefficient, tkey + ".coefficient")});
    }
    return polynomial_connection(kind, std::move(chart), std::move(terms));
  }
  if (c.family == "gaussian-bump") {
    const double width = require(c.width, key + ".width");
    if (!(width > 0)) throw ConfigError(key + ".width", "width must be positive");
    return gaussian_bump_connection(generators(), require_point(c.center, m, key + ".center"), width,
                                    require(c.amplitude, key + ".amplitude"), std::move(chart));
  }
  if (c.family == "random-polynomial") {
    if (kind.family() != GroupKind::Family::SU2) throw ConfigError(key + ".family", "random-polynomial is SU2 only");
    if (m != 2) throw ConfigError(key, "random-polynomial needs a planar chart");
    Rng rng(c.seed.value_or(0));
    return random_su2_polynomial_connection(rng, std::move(chart), c.scale.value_or(1.0));
  }
  throw ConfigError(key + ".family", "unknown connection family \"" + c.family + "\"");
}

Path build_path(const PathSpec& p, int m, const std::optional<Surface>& surface, const std::string& key) {
  auto center = [&] { return p.center.empty() ? Vector(Vector::Zero(m)) : require_point(p.center, m, key + ".center"); };
  if (p.family == "circle") {
    const double r = require(p.radius, key + ".radius");
    if (!(r > 0)) throw ConfigError(key + ".radius", "radius must be positive");
    return Path::circle(center(), r);
  }
  if (p.family == "ellipse") {
    return Path::ellipse(center(), require(p.a, key + ".a"), require(p.b, key + ".b"));
  }
  if (p.family == "segment") {
    return Path::segment(require_point(p.from, m, key + ".from"), require_point(p.to, m, key + ".to"));
  }
  if (p.family == "fourier") {
    std::vector<Vector> cs;
    std::vector<Vector> ss;
    for (std::size_t i = 0; i < p.cos.size(); ++i) cs.push_back(require_point(p.cos[i], m, key + ".cos[" + std::to_string(i) + "]"));
    for (std::size_t i = 0; i < p.sin.size(); ++i) ss.push_back(require_point(p.sin[i], m, key + ".sin[" + std::to_string(i) + "]"));
    return Path::fourier_loop(center(), cs, ss);
  }
  if (p.family == "boundary") {
    if (!surface) throw ConfigError(key + ".family", "boundary path needs a surface");
    return surface->boundary_loop();
  }
  throw ConfigError(key + ".family", "unknown path family \"" + p.family + "\"");
}

Surface build_surface(const SurfaceSpec& s, int m, const std::string& key) {
  auto center = [&] { return s.center.empty() ? Vector(Vector::Zero(2)) : require_point(s.center, 2, key + ".center"); };
  if (s.family == "identity-disk") return Surface::identity_disk();
  if (s.family == "scaled-disk") return Surface::scaled_disk(center(), require(s.radius, key + ".radius"));
  if (s.family == "ellipse") return Surface::ellipse(center(), require(s.a, key + ".a"), require(s.b, key + ".b"));
  if (s.family == "linear" || s.family == "quadratic") {
    const Vector offset = s.offset.empty() ? Vector(Vector::Zero(m)) : require_point(s.offset, m, key + ".offset");
    const Eigen::MatrixXd lin = to_matrix(s.linear, key + ".linear");
    if (lin.rows() != m || lin.cols() != 2) throw ConfigError(key + ".linear", "expected an m x 2 matrix");
    if (s.family == "linear") return Surface::linear(offset, lin);
    auto vec = [&](const std::vector<double>& v, const char* name) {
      return v.empty() ? Vector(Vector::Zero(m)) : require_point(v, m, key + "." + name);
    };
    return Surface::quadratic(offset, lin, vec(s.q_xx, "q_xx"), vec(s.q_xy, "q_xy"), vec(s.q_yy, "q_yy"));
  }
  throw ConfigError(key + ".family", "unknown surface family \"" + s.family + "\"");
}

GaugeField build_gauge(const GaugeSpec& g, const Connection& conn, const std::string& key) {
  const GroupKind kind = conn.kind();
  if (g.family == "identity") return identity_gauge(kind);
  if (g.family == "constant") {
    if (!g.element) throw ConfigError(key + ".element", "missing required key");
    return constant_gauge(exp_map(parse_algebra(kind, *g.element, key + ".element")));
  }
  if (g.family == "exp-product") {
    if (g.factors.empty()) throw ConfigError(key + ".factors", "missing required key");
    std::vector<std::pair<AlgebraElement, ScalarPolynomial>> factors;
    for (std::size_t i = 0; i < g.factors.size(); ++i) {
      const std::string fkey = key + ".factors[" + std::to_string(i) + "]";
      ScalarPolynomial phase;
      for (std::size_t k = 0; k < g.factors[i].phase.size(); ++k) {
        const auto& t = g.factors[i].phase[k];
        if (static_cast<int>(t.powers.size()) != conn.dim()) {
          throw ConfigError(fkey + ".phase[" + std::to_string(k) + "].powers", "one power per coordinate");
        }
        phase.push_back({t.powers, t.coefficient});
      }
      factors.emplace_back(parse_algebra(kind, g.factors[i].generator, fkey + ".generator"), std::move(phase));
    }
    return exp_product_gauge(std::move(factors));
  }
  if (g.family == "axial-line") {
    const Vector v = require_point(g.direction, conn.dim(), key + ".direction");
    try {
      return axial_line_gauge(conn, v, g.line_steps.value_or(kDefaultSteps));
    } catch (const Error& e) {
      throw ConfigError(key, e.what());
    }
  }
  throw ConfigError(key + ".family", "unknown gauge family \"" + g.family + "\"");
}

}  // namespace

PolarGrid parse_grid(const std::string& text, const std::string& key) {
  const auto x = text.find('x');
  PolarGrid grid;
  auto parse_int = [&](std::string_view part, int& out) {
    const auto* end = part.data() + part.size();
    auto [ptr, ec] = std::from_chars(part.data(), end, out);
    return ec == std::errc() && ptr == end && out > 0;
  };
  if (x == std::string::npos || !parse_int(std::string_view(text).substr(0, x), grid.radial) ||
      !parse_int(std::string_view(text).substr(x + 1), grid.angular)) {
    throw ConfigError(key, "expected <radial>x<angular> with positive integers, got \"" + text + "\"");
  }
  return grid;
}

AlgebraElement parse_algebra(GroupKind kind, const Json& value, const std::string& key) {
  if (!value.is_array()) throw ConfigError(key, "expected a list");
  switch (kind.family()) {
    case GroupKind::Family::U1: {
      const auto v = Node::number_list(value, key);
      if (v.size() != 1) throw ConfigError(key, "U1 elements are written [theta]");
      return AlgebraElement::u1(v[0]);
    }
    case GroupKind::Family::SU2: {
      const auto v = Node::number_list(value, key);
      if (v.size() != 3) throw ConfigError(key, "SU2 elements are written [a, b, c]");
      return AlgebraElement::su2(v[0], v[1], v[2]);
    }
    case GroupKind::Family::SOn: {
      const int n = kind.matrix_dim();
      if (static_cast<int>(value.size()) != n) throw ConfigError(key, "expected " + std::to_string(n) + " rows");
      Eigen::MatrixXd m(n, n);
      for (int i = 0; i < n; ++i) {
        const auto row = Node::number_list(value[i], key + "[" + std::to_string(i) + "]");
        if (static_cast<int>(row.size()) != n) throw ConfigError(key + "[" + std::to_string(i) + "]", "row length");
        for (int j = 0; j < n; ++j) m(i, j) = row[j];
      }
      if ((m + m.transpose()).norm() > kAlgebraTolerance) throw ConfigError(key, "matrix is not skew-symmetric");
      return AlgebraElement::so(m);
    }
  }
  throw ConfigError(key, "unsupported group");
}

Json algebra_to_json(const AlgebraElement& x) {
  const Matrix& m = x.matrix();
  switch (x.kind().family()) {
    case GroupKind::Family::U1: return Json::array({m(0, 0).imag()});
    case GroupKind::Family::SU2: return Json::array({m(0, 0).imag(), m(0, 1).real(), m(0, 1).imag()});
    case GroupKind::Family::SOn: {
      Json rows = Json::array();
      for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j).real());
        rows.push_back(row);
      }
      return rows;
    }
  }
  return Json::array();
}

LabConfig parse_config(const Json& root) {
  Node n(root, "");
  n.allow({"scenarios", "fuzz"});
  LabConfig config;
  config.scenarios = n.list("scenarios", parse_scenario);
  std::set<std::string> ids;
  for (std::size_t i = 0; i < config.scenarios.size(); ++i) {
    if (!ids.insert(config.scenarios[i].id).second) {
      throw ConfigError("scenarios[" + std::to_string(i) + "].id", "duplicate id \"" + config.scenarios[i].id + "\"");
    }
  }
  if (n.has("fuzz")) config.fuzz = parse_fuzz(n.child("fuzz"));
  return config;
}

LabConfig parse_config_text(const std::string& text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("<document>", std::string("invalid JSON: ") + e.what());
  }
  return parse_config(root);
}

LabConfig load_config(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("<file>", "cannot open " + file);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

Json to_json(const LabConfig& config) {
  Json root;
  Json scenarios = Json::array();
  for (const auto& s : config.scenarios) {
    Json j;
    j["id"] = s.id;
    j["group"] = s.group;
    j["connection"] = to_json(s.connection);
    j["chart"] = to_json(s.chart);
    if (s.path) j["path"] = to_json(*s.path);
    if (s.path2) j["path2"] = to_json(*s.path2);
    if (s.surface) j["surface"] = to_json(*s.surface);
    if (s.gauge) j["gauge"] = to_json(*s.gauge);
    j["numerics"] = to_json(s.numerics);
    put(j, "expect", s.expect);
    scenarios.push_back(j);
  }
  root["scenarios"] = scenarios;
  if (config.fuzz) {
    Json f = Json::object();
    put(f, "suite", config.fuzz->suite);
    put(f, "count", config.fuzz->count);
    put(f, "seed", config.fuzz->seed);
    put(f, "steps", config.fuzz->steps);
    put(f, "grid", config.fuzz->grid);
    root["fuzz"] = f;
  }
  return root;
}

BuiltScenario build_scenario(const ScenarioConfig& s, const std::string& key) {
  GroupKind kind = GroupKind::u1();
  try {
    kind = GroupKind::parse(s.group);
  } catch (const Error&) {
    throw ConfigError(key + ".group", "unknown group \"" + s.group + "\"");
  }
  try {
    Chart chart = build_chart(s.chart, key + ".chart");
    const int m = chart.dim();
    Connection conn = build_connection(s.connection, kind, std::move(chart), key + ".connection");
    std::optional<Surface> surface;
    if (s.surface) surface = build_surface(*s.surface, m, key + ".surface");
    std::optional<Path> path;
    std::optional<Path> path2;
    if (s.path) path = build_path(*s.path, m, surface, key + ".path");
    if (s.path2) path2 = build_path(*s.path2, m, surface, key + ".path2");
    std::optional<GaugeField> gauge;
    if (s.gauge) gauge = build_gauge(*s.gauge, conn, key + ".gauge");
    return BuiltScenario{kind, std::move(conn), std::move(path), std::move(path2), std::move(surface), std::move(gauge)};
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    // Library validation (dimension mismatches and the like) surfaced while building.
    throw ConfigError(key, e.what());
  }
}

}  // namespace holonomy
