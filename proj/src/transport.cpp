#include "holonomy/transport.hpp"

#include <algorithm>
#include <string>

namespace holonomy {

namespace {

// Iterates drifting further than this from the group are re-projected.
constexpr double kReprojectThreshold = 1e-12;

void validate(const Connection& conn, const Path& gamma, int steps) {
  if (steps < kMinSteps) {
    throw Error(ErrorCode::StepCountTooSmall,
                "need at least " + std::to_string(kMinSteps) + " steps, got " + std::to_string(steps));
  }
  if (gamma.dim() != conn.dim()) {
    throw Error(ErrorCode::InvalidArgument, "path dimension does not match the chart");
  }
  const auto& chart = conn.chart();
  for (int k = 0; k <= 2 * steps; ++k) {
    const double t = static_cast<double>(k) / (2.0 * steps);
    if (!chart.contains(gamma.position(t))) {
      throw Error(ErrorCode::OutOfChart, "path leaves the chart near t = " + std::to_string(t));
    }
  }
}

Matrix generator_at(const Connection& conn, const Path& gamma, double t) {
  return conn.form(gamma.position(t), gamma.velocity(t));
}

}  // namespace

TransportResult parallel_transport(const Connection& conn, const Path& gamma, int steps) {
  validate(conn, gamma, steps);
  const auto kind = conn.kind();
  const double dt = 1.0 / steps;

  TransportResult result;
  result.steps = steps;
  result.times.reserve(steps + 1);
  result.samples.reserve(steps + 1);
  result.times.push_back(0.0);
  result.samples.push_back(GroupElement::identity(kind));

  for (int k = 0; k < steps; ++k) {
    const double t_mid = (k + 0.5) * dt;
    const auto exponent = AlgebraElement::project(kind, -dt * generator_at(conn, gamma, t_mid));
    result.max_step_angle = std::max(result.max_step_angle, algebra_norm(exponent));
    const Matrix next = exp_map(exponent).matrix() * result.samples.back().matrix();
    const double defect = unitarity_defect(next);
    result.drift = std::max(result.drift, defect);
    result.samples.push_back(defect > kReprojectThreshold ? project_to_group(next, kind)
                                                          : GroupElement::from_matrix(kind, next));
    result.times.push_back((k + 1) * dt);
  }
  return result;
}

TransportResult reference_transport_rk4(const Connection& conn, const Path& gamma, int steps) {
  validate(conn, gamma, steps);
  const auto kind = conn.kind();
  const double dt = 1.0 / steps;
  const int n = kind.matrix_dim();

  TransportResult result;
  result.steps = steps;
  result.times.push_back(0.0);
  result.samples.push_back(GroupElement::identity(kind));

  Matrix y = Matrix::Identity(n, n);
  for (int k = 0; k < steps; ++k) {
    const double t = k * dt;
    const Matrix a0 = generator_at(conn, gamma, t);
    const Matrix a1 = generator_at(conn, gamma, t + 0.5 * dt);
    const Matrix a2 = generator_at(conn, gamma, t + dt);
    const Matrix k1 = -a0 * y;
    const Matrix k2 = -a1 * (y + 0.5 * dt * k1);
    const Matrix k3 = -a1 * (y + 0.5 * dt * k2);
    const Matrix k4 = -a2 * (y + dt * k3);
    y += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    result.drift = std::max(result.drift, unitarity_defect(y));
    result.samples.push_back(project_to_group(y, kind));
    result.times.push_back((k + 1) * dt);
  }
  return result;
}

GroupElement holonomy_along(const Connection& conn, const Path& gamma, int steps) {
  if (!gamma.is_closed()) throw Error(ErrorCode::PathNotClosed, "holonomy requires a closed loop");
  return parallel_transport(conn, gamma, steps).final();
}

Path circle_of_radius(double r) { return Path::circle(Vector::Zero(2), r); }

double disk_radius(const Connection& conn) {
  if (conn.dim() != 2) throw Error(ErrorCode::InvalidArgument, "circle transport needs a planar chart");
  return conn.chart().inscribed_radius(Vector::Zero(2));
}

TransportResult circle_transport(const Connection& conn, double r, int steps) {
  const double big_r = disk_radius(conn);
  if (!(r > 0 && r < big_r)) {
    throw Error(ErrorCode::RadiusOutOfRange,
                "radius " + std::to_string(r) + " outside (0, " + std::to_string(big_r) + ")");
  }
  return parallel_transport(conn, circle_of_radius(r), steps);
}

}  // namespace holonomy
