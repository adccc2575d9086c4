#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "holonomy/amplitude.hpp"
#include "holonomy/fuzz.hpp"
#include "holonomy/gauge_axial.hpp"
#include "holonomy/random.hpp"
#include "holonomy/runner.hpp"
#include "holonomy/scenario.hpp"
#include "holonomy/transport.hpp"
#include "holonomy/verify.hpp"

namespace py = pybind11;
using namespace holonomy;

namespace {

// Owned for the lifetime of the interpreter.
py::handle error_type;
py::handle config_error_type;

void set_error(py::handle type, const char* what, const char* attr, py::object value) {
  py::object exc = type(what);
  exc.attr(attr) = std::move(value);
  PyErr_SetObject(type.ptr(), exc.ptr());
}

// (generator, [(powers, coefficient), ...]) per factor.
using PhaseFactors = std::vector<std::pair<AlgebraElement, std::vector<std::pair<std::vector<int>, double>>>>;

std::vector<std::pair<AlgebraElement, ScalarPolynomial>> gauge_factors(const PhaseFactors& factors) {
  std::vector<std::pair<AlgebraElement, ScalarPolynomial>> out;
  for (const auto& [x, terms] : factors) {
    ScalarPolynomial phase;
    for (const auto& [powers, c] : terms) phase.push_back({powers, c});
    out.emplace_back(x, phase);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Holonomy amplitudes of matrix-group connections and their curvature bounds";

  error_type = PyErr_NewException("holonomy_lab.HolonomyError", PyExc_RuntimeError, nullptr);
  config_error_type = PyErr_NewException("holonomy_lab.ConfigError", PyExc_ValueError, nullptr);
  error_type.attr("code") = py::none();
  error_type.attr("distance") = py::none();
  config_error_type.attr("key") = py::none();
  m.attr("HolonomyError") = error_type;
  m.attr("ConfigError") = config_error_type;
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const CutLocusError& e) {
      py::object exc = error_type(e.what());
      exc.attr("code") = std::string(to_string(e.code()));
      exc.attr("distance") = e.distance();
      PyErr_SetObject(error_type.ptr(), exc.ptr());
    } catch (const Error& e) {
      set_error(error_type, e.what(), "code", py::str(std::string(to_string(e.code()))));
    } catch (const ScenarioError& e) {
      set_error(error_type, e.what(), "code", py::str(std::string(to_string(e.code()))));
    } catch (const ConfigError& e) {
      set_error(config_error_type, e.what(), "key", py::str(e.key()));
    }
  });

  // Lie groups.
  py::class_<GroupKind>(m, "GroupKind")
      .def_static("u1", &GroupKind::u1)
      .def_static("su2", &GroupKind::su2)
      .def_static("so", &GroupKind::so, py::arg("n"))
      .def_static("parse", [](const std::string& s) { return GroupKind::parse(s); })
      .def_property_readonly("name", &GroupKind::name)
      .def_property_readonly("matrix_dim", &GroupKind::matrix_dim)
      .def_property_readonly("is_abelian", &GroupKind::is_abelian)
      .def(py::self == py::self)
      .def("__repr__", [](const GroupKind& k) { return "GroupKind(" + k.name() + ")"; });

  py::class_<AlgebraElement>(m, "AlgebraElement")
      .def_static("zero", &AlgebraElement::zero)
      .def_static("from_matrix", &AlgebraElement::from_matrix)
      .def_static("u1", &AlgebraElement::u1, py::arg("theta"))
      .def_static("su2", &AlgebraElement::su2, py::arg("a"), py::arg("b"), py::arg("c"))
      .def_static("so", &AlgebraElement::so, py::arg("skew"))
      .def_property_readonly("kind", &AlgebraElement::kind)
      .def_property_readonly("matrix", &AlgebraElement::matrix)
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(-py::self)
      .def(py::self * double())
      .def(double() * py::self);

  py::class_<GroupElement>(m, "GroupElement")
      .def_static("identity", &GroupElement::identity)
      .def_static("from_matrix", &GroupElement::from_matrix)
      .def_static("u1", &GroupElement::u1, py::arg("angle"))
      .def_property_readonly("kind", &GroupElement::kind)
      .def_property_readonly("matrix", &GroupElement::matrix)
      .def("inverse", &GroupElement::inverse)
      .def(py::self * py::self);

  m.def("commutator", &commutator);
  m.def("exp_map", &exp_map);
  m.def("log_map", &log_map);
  m.def("algebra_norm", &algebra_norm);
  m.def("distance_from_identity", &distance_from_identity);
  m.def("geodesic_distance", &geodesic_distance);
  m.def("project_to_group", &project_to_group);

  // Connections, gauges and paths.
  py::class_<Chart>(m, "Chart")
      .def_static("box", &Chart::box, py::arg("lower"), py::arg("upper"))
      .def_static("ball", &Chart::ball, py::arg("center"), py::arg("radius"))
      .def_property_readonly("is_box", &Chart::is_box)
      .def_property_readonly("dim", &Chart::dim)
      .def("contains", &Chart::contains);

  py::class_<Connection>(m, "Connection")
      .def_property_readonly("kind", &Connection::kind)
      .def_property_readonly("chart", &Connection::chart)
      .def_property_readonly("family", &Connection::family)
      .def("form", [](const Connection& c, const Vector& p, const Vector& v) { return eval_form(c, p, v); })
      .def("curvature", [](const Connection& c, const Vector& p, const Vector& u, const Vector& v) {
        return curvature(c, p, u, v).value;
      });

  py::class_<GaugeField>(m, "GaugeField")
      .def_property_readonly("family", &GaugeField::family)
      .def("at", &GaugeField::at);

  m.def("zero_connection", &zero_connection, py::arg("kind"), py::arg("chart"));
  m.def("constant_field_connection", &constant_field_connection, py::arg("field_strength"), py::arg("chart"),
        py::arg("generator") = std::nullopt);
  m.def("constant_coefficient_connection", &constant_coefficient_connection, py::arg("generators"),
        py::arg("chart"));
  m.def(
      "polynomial_connection",
      [](GroupKind kind, Chart chart, const std::vector<std::tuple<int, std::vector<int>, AlgebraElement>>& terms) {
        std::vector<FormTerm> out;
        for (const auto& [k, powers, x] : terms) out.push_back({k, powers, x});
        return polynomial_connection(kind, std::move(chart), std::move(out));
      },
      py::arg("kind"), py::arg("chart"), py::arg("terms"),
      "terms: list of (component, powers, coefficient)");
  m.def("gaussian_bump_connection", &gaussian_bump_connection, py::arg("generators"), py::arg("center"),
        py::arg("width"), py::arg("amplitude"), py::arg("chart"));
  m.def(
      "random_su2_polynomial_connection",
      [](std::uint64_t seed, Chart chart, double scale) {
        Rng rng(seed);
        return random_su2_polynomial_connection(rng, std::move(chart), scale);
      },
      py::arg("seed"), py::arg("chart"), py::arg("scale") = 1.0);
  m.def("identity_gauge", &identity_gauge);
  m.def("constant_gauge", &constant_gauge);
  m.def(
      "exp_product_gauge", [](const PhaseFactors& factors) { return exp_product_gauge(gauge_factors(factors)); },
      py::arg("factors"), "factors: list of (generator, [(powers, coefficient), ...])");
  m.def("gauge_transform", &gauge_transform);

  py::class_<Path>(m, "Path")
      .def_static("circle", &Path::circle, py::arg("center"), py::arg("radius"), py::arg("axis_a") = 0,
                  py::arg("axis_b") = 1)
      .def_static("ellipse", &Path::ellipse, py::arg("center"), py::arg("a"), py::arg("b"), py::arg("axis_a") = 0,
                  py::arg("axis_b") = 1)
      .def_static("segment", &Path::segment, py::arg("start"), py::arg("end"))
      .def_static("fourier_loop", &Path::fourier_loop, py::arg("center"), py::arg("cos"), py::arg("sin"))
      .def_static("sampled", &Path::sampled, py::arg("points"))
      .def_property_readonly("family", &Path::family)
      .def_property_readonly("is_closed", &Path::is_closed)
      .def("position", &Path::position)
      .def("velocity", &Path::velocity);
  m.def("concatenate", &concatenate);
  m.def("reverse", &reverse);
  m.def("path_length", &path_length, py::arg("path"), py::arg("n") = 4096);

  // Transport and amplitudes.
  py::class_<TransportResult>(m, "TransportResult")
      .def_readonly("times", &TransportResult::times)
      .def_readonly("samples", &TransportResult::samples)
      .def_readonly("drift", &TransportResult::drift)
      .def_readonly("max_step_angle", &TransportResult::max_step_angle)
      .def_readonly("steps", &TransportResult::steps)
      .def_property_readonly("final", &TransportResult::final);
  m.def("parallel_transport", &parallel_transport, py::arg("connection"), py::arg("path"),
        py::arg("steps") = kDefaultSteps);
  m.def("reference_transport_rk4", &reference_transport_rk4, py::arg("connection"), py::arg("path"),
        py::arg("steps"));
  m.def("holonomy", &holonomy_along, py::arg("connection"), py::arg("path"), py::arg("steps") = kDefaultSteps);
  m.def(
      "amplitude", [](const Connection& c, const Path& p, int steps) { return amplitude(c, p, steps).value; },
      py::arg("connection"), py::arg("path"), py::arg("steps") = kDefaultSteps);
  m.def("abelian_amplitude_integral", &abelian_amplitude_integral, py::arg("connection"), py::arg("path"),
        py::arg("steps") = kDefaultSteps);

  // Checks.
  py::class_<VerificationReport>(m, "VerificationReport")
      .def_readonly("scenario", &VerificationReport::scenario)
      .def_readonly("lhs", &VerificationReport::lhs)
      .def_readonly("rhs", &VerificationReport::rhs)
      .def_readonly("slack", &VerificationReport::slack)
      .def_readonly("tolerance", &VerificationReport::tolerance)
      .def_readonly("passed", &VerificationReport::pass)
      .def_readonly("steps", &VerificationReport::steps)
      .def_readonly("grid", &VerificationReport::grid)
      .def_readonly("seed", &VerificationReport::seed)
      .def_readonly("note", &VerificationReport::note)
      .def_readonly("details", &VerificationReport::details)
      .def("__repr__", [](const VerificationReport& r) {
        std::ostringstream s;
        s << "VerificationReport(" << r.scenario << ", lhs=" << r.lhs << ", rhs=" << r.rhs
          << ", pass=" << (r.pass ? "True" : "False") << ")";
        return s.str();
      });

  py::class_<PolarGrid>(m, "PolarGrid")
      .def(py::init<int, int>(), py::arg("radial") = 256, py::arg("angular") = 256)
      .def_readwrite("radial", &PolarGrid::radial)
      .def_readwrite("angular", &PolarGrid::angular)
      .def("__str__", &PolarGrid::label);

  py::class_<Surface>(m, "Surface")
      .def_static("identity_disk", &Surface::identity_disk)
      .def_static("scaled_disk", &Surface::scaled_disk, py::arg("center"), py::arg("radius"))
      .def_static("ellipse", &Surface::ellipse, py::arg("center"), py::arg("a"), py::arg("b"))
      .def_static("linear", &Surface::linear, py::arg("offset"), py::arg("linear"))
      .def_property_readonly("family", &Surface::family)
      .def("map", &Surface::map)
      .def("boundary_loop", &Surface::boundary_loop);

  m.def("curvature_mass", &curvature_mass, py::arg("connection"), py::arg("surface"), py::arg("grid") = PolarGrid{});
  m.def("check_theorem", &check_theorem, py::arg("connection"), py::arg("surface"), py::arg("grid") = PolarGrid{},
        py::arg("steps") = kDefaultSteps);
  m.def("check_corollary_planar", &check_corollary_planar, py::arg("connection"), py::arg("loop"),
        py::arg("filling"), py::arg("grid") = PolarGrid{64, 128}, py::arg("steps") = kDefaultSteps);
  m.def("check_derivative_lemma", &check_derivative_lemma, py::arg("connection"), py::arg("r"), py::arg("steps"),
        py::arg("h_r"));
  m.def("check_radial_estimate", &check_radial_estimate, py::arg("connection"), py::arg("r"), py::arg("h_r"),
        py::arg("steps"), py::arg("angular_nodes") = 1024);
  m.def("sweep_radius", &sweep_radius, py::arg("connection"), py::arg("radii"), py::arg("steps") = kDefaultSteps,
        py::arg("grid") = PolarGrid{128, 128});
  m.def("check_subadditivity", &check_subadditivity, py::arg("connection"), py::arg("gamma"), py::arg("eta"),
        py::arg("steps") = kDefaultSteps);
  m.def("check_conjugation_invariance", &check_conjugation_invariance, py::arg("connection"), py::arg("gamma"),
        py::arg("eta"), py::arg("steps") = kDefaultSteps);
  m.def("check_gauge_invariance", &check_gauge_invariance, py::arg("connection"), py::arg("gauge"),
        py::arg("gamma"), py::arg("steps") = kDefaultSteps);

  // Axial gauge.
  py::class_<AxialGaugeResult>(m, "AxialGaugeResult")
      .def_readonly("gauge", &AxialGaugeResult::gauge)
      .def_readonly("direction", &AxialGaugeResult::direction)
      .def_readonly("residual", &AxialGaugeResult::residual)
      .def_readonly("grid", &AxialGaugeResult::grid);
  m.def("axial_gauge", &axial_gauge, py::arg("connection"), py::arg("direction"), py::arg("grid"),
        py::arg("line_steps") = 4096);
  m.def("axial_line_gauge", &axial_line_gauge, py::arg("connection"), py::arg("direction"),
        py::arg("line_steps") = 4096);

  // Configs, fuzzing and subcommands.
  m.def(
      "run_fuzz",
      [](const std::string& suite, std::uint64_t seed, int count, int steps, int threads) {
        FuzzOptions options;
        options.suite = parse_fuzz_suite(suite);
        options.seed = seed;
        options.count = count;
        options.steps = steps;
        options.threads = threads;
        py::gil_scoped_release release;
        return run_fuzz(options);
      },
      py::arg("suite") = "theorem", py::arg("seed") = 42, py::arg("count") = 200, py::arg("steps") = 4096,
      py::arg("threads") = 1);

  py::class_<LabConfig>(m, "LabConfig")
      .def_property_readonly("scenario_ids", [](const LabConfig& c) {
        std::vector<std::string> ids;
        for (const auto& s : c.scenarios) ids.push_back(s.id);
        return ids;
      });
  m.def("load_config", &load_config, py::arg("file"));
  m.def("parse_config", &parse_config_text, py::arg("text"));
  m.def("subcommands", &subcommands);
  m.def(
      "run_subcommand",
      [](const std::string& name, const LabConfig& config, std::optional<int> steps, std::optional<std::string> grid,
         std::optional<std::uint64_t> seed, int threads) {
        RunOptions options;
        options.steps = steps;
        if (grid) options.grid = parse_grid(*grid);
        options.seed = seed;
        options.threads = threads;
        py::gil_scoped_release release;
        return run_subcommand(name, config, options);
      },
      py::arg("name"), py::arg("config"), py::arg("steps") = std::nullopt, py::arg("grid") = std::nullopt,
      py::arg("seed") = std::nullopt, py::arg("threads") = 1);
  m.def(
      "to_csv",
      [](const std::vector<VerificationReport>& rows, bool details) {
        std::ostringstream out;
        write_csv(out, rows, details);
        return out.str();
      },
      py::arg("rows"), py::arg("details") = false);
}
