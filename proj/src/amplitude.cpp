#include "holonomy/amplitude.hpp"

#include <cmath>
#include <numbers>

namespace holonomy {

namespace {

void require_closed(const Path& gamma) {
  if (!gamma.is_closed()) throw Error(ErrorCode::PathNotClosed, "amplitude requires a closed loop");
}

double lifted_phase(const TransportResult& transport) {
  if (transport.max_step_angle >= std::numbers::pi) {
    throw Error(ErrorCode::NumericalBreakdown,
                "a single transport step rotates by pi or more; the winding lift needs more steps");
  }
  double phase = 0.0;
  for (std::size_t k = 0; k + 1 < transport.samples.size(); ++k) {
    const Complex ratio = transport.samples[k + 1].matrix()(0, 0) * std::conj(transport.samples[k].matrix()(0, 0));
    phase += std::arg(ratio);
  }
  return phase;
}

}  // namespace

std::string to_string(AmplitudeMethod method) {
  return method == AmplitudeMethod::WindingLift ? "winding-lift" : "geodesic-log";
}

AmplitudeValue amplitude_of(const TransportResult& transport, GroupKind kind, std::string loop) {
  if (kind.family() == GroupKind::Family::U1) {
    return {std::abs(lifted_phase(transport)), AmplitudeMethod::WindingLift, std::move(loop)};
  }
  const GroupElement& holonomy = transport.final();
  if (kind.family() == GroupKind::Family::SU2) {
    // distance_from_identity is defined on the cut locus too; -id is still
    // reported because the minimizing geodesic is not unique there.
    const double value = distance_from_identity(holonomy);
    const Matrix& m = holonomy.matrix();
    if ((m + Matrix::Identity(2, 2)).norm() < 1e-12) {
      throw CutLocusError("SU(2) holonomy is -id; every half-turn geodesic has length pi*sqrt(2)", value);
    }
    return {value, AmplitudeMethod::GeodesicLog, std::move(loop)};
  }
  return {distance_from_identity(holonomy), AmplitudeMethod::GeodesicLog, std::move(loop)};
}

AmplitudeValue amplitude(const Connection& conn, const Path& gamma, int steps) {
  require_closed(gamma);
  return amplitude_of(parallel_transport(conn, gamma, steps), conn.kind(), gamma.family());
}

double abelian_amplitude_integral(const Connection& conn, const Path& gamma, int steps) {
  if (conn.kind().family() != GroupKind::Family::U1) {
    throw Error(ErrorCode::WrongGroup, "the line-integral formula needs an abelian U(1) connection");
  }
  require_closed(gamma);
  if (steps < kMinSteps) throw Error(ErrorCode::StepCountTooSmall, "too few quadrature nodes");
  double sum = 0.0;
  for (int k = 0; k < steps; ++k) {
    const double t = (k + 0.5) / steps;
    const Vector p = gamma.position(t);
    if (!conn.chart().contains(p)) throw Error(ErrorCode::OutOfChart, "loop leaves the chart");
    sum += conn.form(p, gamma.velocity(t))(0, 0).imag();
  }
  return std::abs(sum / steps);
}

VerificationReport check_subadditivity(const Connection& conn, const Path& gamma, const Path& eta, int steps) {
  require_closed(gamma);
  require_closed(eta);
  const Path joined = concatenate(gamma, eta);
  const double lhs = amplitude(conn, joined, 2 * steps).value;
  const double rhs = amplitude(conn, gamma, steps).value + amplitude(conn, eta, steps).value;
  auto report = inequality_report("subadditivity", lhs, rhs, kAbelianTolerance);
  report.steps = steps;
  return report;
}

VerificationReport check_conjugation_invariance(const Connection& conn, const Path& gamma, const Path& eta,
                                                int steps) {
  require_closed(gamma);
  if ((eta.start() - gamma.start()).norm() > kEndpointTolerance) {
    throw Error(ErrorCode::EndpointMismatch, "eta must start at the base point of gamma");
  }
  // reverse(eta) and gamma take a quarter of the parameter interval each.
  const Path conjugated = concatenate(concatenate(reverse(eta), gamma), eta);
  const double lhs = amplitude(conn, conjugated, 4 * steps).value;
  const double rhs = amplitude(conn, gamma, steps).value;
  auto report = equality_report("conjugation", lhs, rhs, kNonabelianTolerance);
  report.steps = steps;
  return report;
}

VerificationReport check_gauge_invariance(const Connection& conn, const GaugeField& gauge, const Path& gamma,
                                          int steps) {
  require_closed(gamma);
  const double lhs = amplitude(conn, gamma, steps).value;
  const double rhs = amplitude(gauge_transform(conn, gauge), gamma, steps).value;
  auto report = equality_report("gauge-invariance", lhs, rhs, kNonabelianTolerance);
  report.steps = steps;
  return report;
}

}  // namespace holonomy
