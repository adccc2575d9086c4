#include "holonomy/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "holonomy/transport.hpp"

namespace holonomy {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

class BoundaryCurve final : public Curve {
 public:
  explicit BoundaryCurve(Surface sigma) : sigma_(std::move(sigma)) {}

  int dim() const override { return sigma_.dim(); }
  std::string family() const override { return "boundary(" + sigma_.family() + ")"; }

  Vector position(double t) const override { return sigma_.map(point(t)); }

  Vector velocity(double t) const override {
    const Vector q = point(t);
    Vector dq(2);
    dq << -kTwoPi * q[1], kTwoPi * q[0];
    return sigma_.jacobian(q) * dq;
  }

 private:
  static Vector point(double t) {
    Vector q(2);
    q << std::cos(kTwoPi * t), std::sin(kTwoPi * t);
    return q;
  }

  Surface sigma_;
};

Vector planar(double x, double y) {
  Vector p(2);
  p << x, y;
  return p;
}

void require_planar(const Connection& conn) {
  if (conn.dim() != 2) throw Error(ErrorCode::InvalidArgument, "this check needs a planar connection");
}

void check_step(double r, double h_r) {
  if (!(h_r > 0.0) || h_r > r / 10.0) {
    throw Error(ErrorCode::InvalidArgument, "radial step must lie in (0, r/10]");
  }
}

}  // namespace

Surface::Surface(std::string family, Vector offset, Eigen::MatrixXd linear, Vector q_xx, Vector q_xy, Vector q_yy)
    : family_(std::move(family)),
      offset_(std::move(offset)),
      linear_(std::move(linear)),
      q_xx_(std::move(q_xx)),
      q_xy_(std::move(q_xy)),
      q_yy_(std::move(q_yy)) {
  const auto m = offset_.size();
  if (linear_.rows() != m || linear_.cols() != 2 || q_xx_.size() != m || q_xy_.size() != m || q_yy_.size() != m) {
    throw Error(ErrorCode::InvalidArgument, "surface coefficient shapes do not match");
  }
}

Surface Surface::identity_disk() {
  return Surface("identity-disk", Vector::Zero(2), Eigen::MatrixXd::Identity(2, 2), Vector::Zero(2), Vector::Zero(2),
                 Vector::Zero(2));
}

Surface Surface::scaled_disk(Vector center, double radius) {
  if (center.size() != 2) throw Error(ErrorCode::InvalidArgument, "scaled disk needs a planar center");
  return Surface("scaled-disk", std::move(center), radius * Eigen::MatrixXd::Identity(2, 2), Vector::Zero(2),
                 Vector::Zero(2), Vector::Zero(2));
}

Surface Surface::ellipse(Vector center, double a, double b) {
  if (center.size() != 2) throw Error(ErrorCode::InvalidArgument, "ellipse needs a planar center");
  Eigen::MatrixXd lin = Eigen::MatrixXd::Zero(2, 2);
  lin(0, 0) = a;
  lin(1, 1) = b;
  return Surface("ellipse", std::move(center), lin, Vector::Zero(2), Vector::Zero(2), Vector::Zero(2));
}

Surface Surface::linear(Vector offset, Eigen::MatrixXd linear) {
  const auto m = offset.size();
  return Surface("linear", std::move(offset), std::move(linear), Vector::Zero(m), Vector::Zero(m), Vector::Zero(m));
}

Surface Surface::quadratic(Vector offset, Eigen::MatrixXd linear, Vector q_xx, Vector q_xy, Vector q_yy) {
  return Surface("quadratic", std::move(offset), std::move(linear), std::move(q_xx), std::move(q_xy),
                 std::move(q_yy));
}

Vector Surface::map(const Vector& q) const {
  const double x = q[0];
  const double y = q[1];
  return offset_ + linear_ * q + (x * x) * q_xx_ + (x * y) * q_xy_ + (y * y) * q_yy_;
}

Eigen::MatrixXd Surface::jacobian(const Vector& q) const {
  const double x = q[0];
  const double y = q[1];
  Eigen::MatrixXd jac = linear_;
  jac.col(0) += 2.0 * x * q_xx_ + y * q_xy_;
  jac.col(1) += x * q_xy_ + 2.0 * y * q_yy_;
  return jac;
}

Path Surface::boundary_loop() const { return Path(std::make_shared<BoundaryCurve>(*this)); }

AlgebraElement pullback_curvature(const Connection& conn, const Surface& sigma, const Vector& q) {
  if (q.size() != 2 || q.norm() >= 1.0) throw Error(ErrorCode::OutOfDisk, "surface parameter outside the open disk");
  if (sigma.dim() != conn.dim()) throw Error(ErrorCode::InvalidArgument, "surface and chart dimensions differ");
  const Eigen::MatrixXd jac = sigma.jacobian(q);
  return curvature(conn, sigma.map(q), jac.col(0), jac.col(1)).value;
}

double curvature_mass(const Connection& conn, const Surface& sigma, PolarGrid grid) {
  if (grid.radial < kMinPolarGrid.radial || grid.angular < kMinPolarGrid.angular) {
    throw Error(ErrorCode::InvalidArgument, "curvature grid must be at least 16 x 32");
  }
  const double dr = 1.0 / grid.radial;
  const double dtheta = kTwoPi / grid.angular;
  double total = 0.0;
  for (int i = 0; i < grid.radial; ++i) {
    const double r = (i + 0.5) * dr;
    double ring = 0.0;
    for (int j = 0; j < grid.angular; ++j) {
      const double theta = (j + 0.5) * dtheta;
      ring += algebra_norm(pullback_curvature(conn, sigma, planar(r * std::cos(theta), r * std::sin(theta))));
    }
    total += ring * r;
  }
  return total * dr * dtheta;
}

double theorem_tolerance(double rhs) { return 1e-5 + 1e-3 * rhs; }

double radial_tolerance(double h_r, int steps) {
  const double n = static_cast<double>(steps);
  return 1e-4 + 10.0 * h_r * h_r + 100.0 / (n * n);
}

VerificationReport check_theorem(const Connection& conn, const Surface& sigma, PolarGrid grid, int steps) {
  const auto transport = parallel_transport(conn, sigma.boundary_loop(), steps);
  const double lhs = amplitude_of(transport, conn.kind()).value;
  const double rhs = curvature_mass(conn, sigma, grid);
  auto report = inequality_report("theorem", lhs, rhs, theorem_tolerance(rhs));
  report.steps = steps;
  report.grid = grid.label();
  report.drift = transport.drift;
  return report;
}

VerificationReport check_corollary_planar(const Connection& conn, const Path& gamma,
                                          const std::optional<Surface>& filling, PolarGrid grid, int steps) {
  if (!filling) throw Error(ErrorCode::FillingMissing, "the planar corollary needs an explicit filling");
  require_planar(conn);
  if (filling->dim() != 2) throw Error(ErrorCode::InvalidArgument, "filling must be planar");
  if (!gamma.is_closed()) throw Error(ErrorCode::PathNotClosed, "corollary needs a closed loop");
  if (grid.radial < kMinPolarGrid.radial || grid.angular < kMinPolarGrid.angular) {
    throw Error(ErrorCode::InvalidArgument, "curvature grid must be at least 16 x 32");
  }

  const auto transport = parallel_transport(conn, gamma, steps);
  const double lhs = amplitude_of(transport, conn.kind()).value;
  const double length = path_length(gamma, steps);

  const Vector e1 = planar(1.0, 0.0);
  const Vector e2 = planar(0.0, 1.0);
  double sup = 0.0;
  for (int i = 0; i < grid.radial; ++i) {
    const double r = (i + 0.5) / grid.radial;
    for (int j = 0; j < grid.angular; ++j) {
      const double theta = (j + 0.5) * kTwoPi / grid.angular;
      const Vector p = filling->map(planar(r * std::cos(theta), r * std::sin(theta)));
      sup = std::max(sup, algebra_norm(curvature(conn, p, e1, e2).value));
    }
  }
  const double rhs = length * length * sup / (4.0 * std::numbers::pi);
  auto report = inequality_report("corollary", lhs, rhs, theorem_tolerance(rhs));
  report.steps = steps;
  report.grid = grid.label();
  report.drift = transport.drift;
  report.details["length"] = length;
  report.details["sup_curvature"] = sup;
  return report;
}

VerificationReport check_derivative_lemma(const Connection& conn, double r, int steps, double h_r) {
  require_planar(conn);
  check_step(r, h_r);
  const double big_r = disk_radius(conn);
  if (!(r - h_r > 0.0) || !(r + h_r < big_r)) {
    throw Error(ErrorCode::RadiusOutOfRange, "r +- h_r must stay inside (0, R)");
  }
  const auto kind = conn.kind();

  const Matrix outer = circle_transport(conn, r + h_r, steps).final().matrix();
  const Matrix inner = circle_transport(conn, r - h_r, steps).final().matrix();
  const Matrix derivative = (outer - inner) / (2.0 * h_r);

  // Doubling the steps puts odd samples at the midpoints of the N cells.
  const auto fine = circle_transport(conn, r, 2 * steps);
  const Matrix g_one = fine.final().matrix();
  Matrix integral = Matrix::Zero(kind.matrix_dim(), kind.matrix_dim());
  for (int k = 0; k < steps; ++k) {
    const double t = (k + 0.5) / steps;
    const double theta = kTwoPi * t;
    const Vector e = planar(std::cos(theta), std::sin(theta));
    const Vector ie = planar(-std::sin(theta), std::cos(theta));
    const Matrix& g = fine.samples[2 * k + 1].matrix();
    const Matrix omega = curvature(conn, r * e, e, ie).value.matrix();
    integral += g_one * g.adjoint() * omega * g;
  }
  integral *= kTwoPi * r / steps;

  const Matrix w = conn.form(planar(r, 0.0), planar(1.0, 0.0));
  const Matrix bracket = w * g_one - g_one * w;
  const double plus = (derivative - bracket - integral).norm();
  const double minus = (derivative + bracket + integral).norm();

  const double n = static_cast<double>(steps);
  const double tol = kLemmaConstant * (h_r * h_r + 1.0 / (n * n));
  auto report = inequality_report("derivative-lemma", std::min(plus, minus), 0.0, tol);
  report.steps = steps;
  report.drift = fine.drift;
  report.details["residual_plus"] = plus;
  report.details["residual_minus"] = minus;
  report.details["matched_sign"] = minus <= plus ? -1.0 : 1.0;
  report.details["integral_norm"] = integral.norm();
  report.note = minus <= plus ? "minus" : "plus";
  return report;
}

VerificationReport check_radial_estimate(const Connection& conn, double r, double h_r, int steps,
                                         int angular_nodes) {
  require_planar(conn);
  check_step(r, h_r);
  if (angular_nodes < kMinPolarGrid.angular) throw Error(ErrorCode::InvalidArgument, "too few angular nodes");
  const auto kind = conn.kind();
  const auto outer = circle_transport(conn, r + h_r, steps);
  const auto inner = circle_transport(conn, r - h_r, steps);
  const double lhs = std::abs(amplitude_of(outer, kind).value - amplitude_of(inner, kind).value) / (2.0 * h_r);

  double sum = 0.0;
  for (int j = 0; j < angular_nodes; ++j) {
    const double theta = (j + 0.5) * kTwoPi / angular_nodes;
    const Vector e = planar(std::cos(theta), std::sin(theta));
    const Vector ie = planar(-std::sin(theta), std::cos(theta));
    sum += algebra_norm(curvature(conn, r * e, e, ie).value);
  }
  const double rhs = r * sum * kTwoPi / angular_nodes;
  auto report = inequality_report("radial-estimate", lhs, rhs, radial_tolerance(h_r, steps));
  report.steps = steps;
  report.grid = std::to_string(angular_nodes);
  report.drift = std::max(outer.drift, inner.drift);
  return report;
}

std::vector<VerificationReport> sweep_radius(const Connection& conn, const std::vector<double>& radii, int steps,
                                             PolarGrid grid) {
  require_planar(conn);
  const double big_r = disk_radius(conn);
  std::vector<VerificationReport> rows;
  double previous = 0.0;
  for (double r : radii) {
    if (!(r > previous) || !(r < big_r)) {
      throw Error(ErrorCode::RadiusOutOfRange, "radii must increase inside (0, R)");
    }
    previous = r;
    const auto transport = circle_transport(conn, r, steps);
    const double lhs = amplitude_of(transport, conn.kind()).value;
    const double rhs = curvature_mass(conn, Surface::scaled_disk(Vector::Zero(2), r), grid);
    auto row = inequality_report("sweep", lhs, rhs, theorem_tolerance(rhs));
    row.steps = steps;
    row.grid = grid.label();
    row.drift = transport.drift;
    row.details["radius"] = r;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace holonomy
