#include "holonomy/connection.hpp"

#include <algorithm>
#include <cmath>

namespace holonomy {

namespace {

void require_dim(const Vector& x, int dim, const char* what) {
  if (x.size() != dim) {
    throw Error(ErrorCode::InvalidArgument, std::string(what) + " has dimension " + std::to_string(x.size()) +
                                                ", expected " + std::to_string(dim));
  }
}

void require_in_chart(const Connection& conn, const Vector& p) {
  require_dim(p, conn.dim(), "point");
  if (!conn.chart().contains(p)) throw Error(ErrorCode::OutOfChart, "point lies outside the chart");
}

class GaugeTransformedField final : public FormField {
 public:
  GaugeTransformedField(std::shared_ptr<const FormField> base, GaugeField gauge)
      : base_(std::move(base)), gauge_(std::move(gauge)) {}

  GroupKind kind() const override { return base_->kind(); }
  int dim() const override { return base_->dim(); }
  std::string family() const override { return "gauge-transformed(" + base_->family() + ")"; }

  FormCoefficients coefficients(const Vector& p) const override {
    const Matrix g = gauge_.value(p);
    const Matrix g_inv = g.adjoint();
    const auto dg = gauge_.differential(p);
    auto coeffs = base_->coefficients(p);
    for (int k = 0; k < dim(); ++k) coeffs[k] = g_inv * dg[k] + g_inv * coeffs[k] * g;
    return coeffs;
  }

  std::optional<FormJacobian> jacobian(const Vector& p) const override {
    auto base_jac = base_->jacobian(p);
    if (!base_jac) return std::nullopt;
    const auto& map = *gauge_.map();
    auto dg = map.differential(p);
    auto ddg = map.hessian(p);
    if (!dg || !ddg) return std::nullopt;
    const Matrix g = map.value(p);
    const Matrix g_inv = g.adjoint();
    const auto base = base_->coefficients(p);
    const int m = dim();
    FormJacobian jac(m, FormCoefficients(m));
    for (int j = 0; j < m; ++j) {
      // d_j(g^-1) = -g^-1 (d_j g) g^-1
      const Matrix dj_inv = -g_inv * (*dg)[j] * g_inv;
      for (int k = 0; k < m; ++k) {
        jac[j][k] = dj_inv * (*dg)[k] + g_inv * (*ddg)[j][k] + dj_inv * base[k] * g +
                    g_inv * (*base_jac)[j][k] * g + g_inv * base[k] * (*dg)[j];
      }
    }
    return jac;
  }

 private:
  std::shared_ptr<const FormField> base_;
  GaugeField gauge_;
};

}  // namespace

// -------------------------------------------------------------------- Chart

Chart::Chart(Shape shape, Vector lower, Vector upper, Vector center, double radius)
    : shape_(shape), lower_(std::move(lower)), upper_(std::move(upper)), center_(std::move(center)), radius_(radius) {}

Chart Chart::box(Vector lower, Vector upper) {
  if (lower.size() != upper.size() || lower.size() == 0) {
    throw Error(ErrorCode::InvalidArgument, "box corners must have equal, positive dimension");
  }
  if (!((upper - lower).minCoeff() > 0)) throw Error(ErrorCode::InvalidArgument, "box must have positive extent");
  Vector center = 0.5 * (lower + upper);
  const double radius = 0.5 * (upper - lower).maxCoeff();
  return Chart(Shape::Box, std::move(lower), std::move(upper), std::move(center), radius);
}

Chart Chart::ball(Vector center, double radius) {
  if (center.size() == 0) throw Error(ErrorCode::InvalidArgument, "ball center must be non-empty");
  if (!(radius > 0)) throw Error(ErrorCode::InvalidArgument, "ball radius must be positive");
  Vector lower = center.array() - radius;
  Vector upper = center.array() + radius;
  return Chart(Shape::Ball, std::move(lower), std::move(upper), std::move(center), radius);
}

bool Chart::contains(const Vector& p) const {
  if (p.size() != center_.size()) return false;
  const double slack = 1e-12 * std::max(1.0, scale());
  if (shape_ == Shape::Ball) return (p - center_).norm() <= radius_ + slack;
  return (p - lower_).minCoeff() >= -slack && (upper_ - p).minCoeff() >= -slack;
}

double Chart::scale() const { return radius_; }

double Chart::inscribed_radius(const Vector& c) const {
  if (!contains(c)) return 0.0;
  if (shape_ == Shape::Ball) return std::max(0.0, radius_ - (c - center_).norm());
  return std::max(0.0, std::min((c - lower_).minCoeff(), (upper_ - c).minCoeff()));
}

// --------------------------------------------------------------- Connection

Connection::Connection(Chart chart, std::shared_ptr<const FormField> field)
    : chart_(std::move(chart)), field_(std::move(field)) {
  if (!field_) throw Error(ErrorCode::InvalidArgument, "connection requires a form field");
  if (field_->dim() != chart_.dim()) {
    throw Error(ErrorCode::InvalidArgument, "form field dimension " + std::to_string(field_->dim()) +
                                                " does not match chart dimension " + std::to_string(chart_.dim()));
  }
}

Matrix Connection::form(const Vector& p, const Vector& v) const {
  const auto coeffs = field_->coefficients(p);
  const int n = kind().matrix_dim();
  Matrix out = Matrix::Zero(n, n);
  for (int k = 0; k < dim(); ++k) {
    if (v[k] != 0.0) out += v[k] * coeffs[k];
  }
  return out;
}

FormJacobian Connection::jacobian(const Vector& p) const {
  if (auto exact = field_->jacobian(p)) return *std::move(exact);
  const int m = dim();
  const double h = fd_step();
  FormJacobian jac(m);
  for (int j = 0; j < m; ++j) {
    Vector plus = p;
    Vector minus = p;
    plus[j] += h;
    minus[j] -= h;
    const auto cp = field_->coefficients(plus);
    const auto cm = field_->coefficients(minus);
    jac[j].resize(m);
    for (int k = 0; k < m; ++k) jac[j][k] = (cp[k] - cm[k]) / (2.0 * h);
  }
  return jac;
}

Matrix Connection::curvature_matrix(const Vector& p, const Vector& u, const Vector& v) const {
  const int m = dim();
  const int n = kind().matrix_dim();
  const auto coeffs = field_->coefficients(p);
  const auto jac = jacobian(p);
  Matrix omega_u = Matrix::Zero(n, n);
  Matrix omega_v = Matrix::Zero(n, n);
  Matrix d_omega = Matrix::Zero(n, n);
  for (int k = 0; k < m; ++k) {
    omega_u += u[k] * coeffs[k];
    omega_v += v[k] * coeffs[k];
  }
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k < m; ++k) {
      const double weight = u[j] * v[k] - v[j] * u[k];
      if (weight != 0.0) d_omega += weight * jac[j][k];
    }
  }
  return d_omega + omega_u * omega_v - omega_v * omega_u;
}

AlgebraElement eval_form(const Connection& conn, const Vector& p, const Vector& v) {
  require_in_chart(conn, p);
  require_dim(v, conn.dim(), "vector");
  return AlgebraElement::project(conn.kind(), conn.form(p, v));
}

CurvatureValue curvature(const Connection& conn, const Vector& p, const Vector& u, const Vector& v) {
  require_in_chart(conn, p);
  require_dim(u, conn.dim(), "vector u");
  require_dim(v, conn.dim(), "vector v");
  return {AlgebraElement::project(conn.kind(), conn.curvature_matrix(p, u, v)), p, u, v};
}

// --------------------------------------------------------------- GaugeField

GaugeField::GaugeField(std::shared_ptr<const GaugeMap> map, double fd_step) : map_(std::move(map)), fd_step_(fd_step) {
  if (!map_) throw Error(ErrorCode::InvalidArgument, "gauge field requires a map");
  if (!(fd_step_ > 0)) throw Error(ErrorCode::InvalidArgument, "gauge finite-difference step must be positive");
}

GroupElement GaugeField::at(const Vector& p) const { return GroupElement::from_matrix(kind(), map_->value(p)); }

std::vector<Matrix> GaugeField::differential(const Vector& p) const {
  if (auto exact = map_->differential(p)) return *std::move(exact);
  std::vector<Matrix> out;
  out.reserve(p.size());
  for (Eigen::Index j = 0; j < p.size(); ++j) {
    Vector plus = p;
    Vector minus = p;
    plus[j] += fd_step_;
    minus[j] -= fd_step_;
    out.push_back((map_->value(plus) - map_->value(minus)) / (2.0 * fd_step_));
  }
  return out;
}

Matrix GaugeField::derivative(const Vector& p, const Vector& v) const {
  const auto dg = differential(p);
  const int n = kind().matrix_dim();
  Matrix out = Matrix::Zero(n, n);
  for (Eigen::Index j = 0; j < v.size(); ++j) out += v[j] * dg[j];
  return out;
}

Connection gauge_transform(const Connection& conn, const GaugeField& gauge) {
  if (!(gauge.kind() == conn.kind())) throw Error(ErrorCode::WrongGroup, "gauge and connection groups differ");
  // Probe the chart corners so gauges with bounded support fail here rather than mid-integration.
  gauge.value(conn.chart().lower());
  gauge.value(conn.chart().upper());
  return Connection(conn.chart(), std::make_shared<GaugeTransformedField>(conn.field(), gauge));
}

}  // namespace holonomy
