#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "holonomy/lie.hpp"

namespace holonomy {

/// Coordinate domain U of a trivialization: an axis-aligned box or a ball.
class Chart {
 public:
  enum class Shape { Box, Ball };

  static Chart box(Vector lower, Vector upper);
  static Chart ball(Vector center, double radius);

  Shape shape() const { return shape_; }
  bool is_box() const { return shape_ == Shape::Box; }
  int dim() const { return static_cast<int>(center_.size()); }
  const Vector& lower() const { return lower_; }
  const Vector& upper() const { return upper_; }
  const Vector& center() const { return center_; }
  double radius() const { return radius_; }

  /// Closed-set membership with a relative slack of 1e-12.
  bool contains(const Vector& p) const;
  /// Half the largest box side, or the ball radius.
  double scale() const;
  /// Largest R such that the ball B_R(c) lies in the chart (0 if c is outside).
  double inscribed_radius(const Vector& c) const;

 private:
  Chart(Shape shape, Vector lower, Vector upper, Vector center, double radius);

  Shape shape_;
  Vector lower_;
  Vector upper_;
  Vector center_;
  double radius_;
};

/// Coefficients A_k(p) of a connection form, omega_p[v] = sum_k v_k A_k(p).
using FormCoefficients = std::vector<Matrix>;
/// jac[j][k] = d A_k / d x_j.
using FormJacobian = std::vector<FormCoefficients>;

/// An analytic g-valued 1-form on R^m. Implementations must be defined on a
/// neighbourhood of the chart they are used with, since finite differences
/// may step slightly outside it.
class FormField {
 public:
  virtual ~FormField() = default;

  virtual GroupKind kind() const = 0;
  virtual int dim() const = 0;
  virtual std::string family() const = 0;
  virtual FormCoefficients coefficients(const Vector& p) const = 0;
  /// Exact first derivatives when the family has a closed form.
  virtual std::optional<FormJacobian> jacobian(const Vector& /*p*/) const { return std::nullopt; }
};

/// Connection form on a chart. Immutable; copies share the underlying field.
class Connection {
 public:
  Connection(Chart chart, std::shared_ptr<const FormField> field);

  GroupKind kind() const { return field_->kind(); }
  int dim() const { return chart_.dim(); }
  const Chart& chart() const { return chart_; }
  const std::shared_ptr<const FormField>& field() const { return field_; }
  std::string family() const { return field_->family(); }
  /// Central-difference step, 1e-5 times the chart scale.
  double fd_step() const { return 1e-5 * chart_.scale(); }

  // The members below do not check chart membership.
  FormCoefficients coefficients(const Vector& p) const { return field_->coefficients(p); }
  Matrix form(const Vector& p, const Vector& v) const;
  /// Analytic when available, central differences with fd_step() otherwise.
  FormJacobian jacobian(const Vector& p) const;
  /// d omega_p[u, v] + omega_p[u] omega_p[v] - omega_p[v] omega_p[u].
  Matrix curvature_matrix(const Vector& p, const Vector& u, const Vector& v) const;

  /// Same field on a different chart.
  Connection with_chart(Chart chart) const { return Connection(std::move(chart), field_); }

 private:
  Chart chart_;
  std::shared_ptr<const FormField> field_;
};

struct CurvatureValue {
  AlgebraElement value;
  Vector point;
  Vector u;
  Vector v;
};

/// omega_p[v]. Throws OutOfChart.
AlgebraElement eval_form(const Connection& conn, const Vector& p, const Vector& v);

/// Omega_p[u, v] = d omega_p[u, v] + (omega ^ omega)_p[u, v]. Throws OutOfChart.
CurvatureValue curvature(const Connection& conn, const Vector& p, const Vector& u, const Vector& v);

// ------------------------------------------------------------------ gauges

/// A map g: R^m -> G. Derivatives are optional; GaugeField falls back to
/// central differences when they are missing.
class GaugeMap {
 public:
  virtual ~GaugeMap() = default;

  virtual GroupKind kind() const = 0;
  virtual std::string family() const = 0;
  virtual Matrix value(const Vector& p) const = 0;
  /// d g / d x_j for j < dim.
  virtual std::optional<std::vector<Matrix>> differential(const Vector& /*p*/) const { return std::nullopt; }
  /// hess[j][k] = d^2 g / d x_j d x_k.
  virtual std::optional<std::vector<std::vector<Matrix>>> hessian(const Vector& /*p*/) const { return std::nullopt; }
};

class GaugeField {
 public:
  explicit GaugeField(std::shared_ptr<const GaugeMap> map, double fd_step = 1e-5);

  GroupKind kind() const { return map_->kind(); }
  std::string family() const { return map_->family(); }
  const std::shared_ptr<const GaugeMap>& map() const { return map_; }
  double fd_step() const { return fd_step_; }

  Matrix value(const Vector& p) const { return map_->value(p); }
  GroupElement at(const Vector& p) const;
  /// Partial derivatives d g / d x_j, analytic or by central differences.
  std::vector<Matrix> differential(const Vector& p) const;
  /// dg_p[v].
  Matrix derivative(const Vector& p, const Vector& v) const;

 private:
  std::shared_ptr<const GaugeMap> map_;
  double fd_step_;
};

/// omega'_p[v] = g(p)^-1 dg_p[v] + g(p)^-1 omega_p[v] g(p), on the same chart.
Connection gauge_transform(const Connection& conn, const GaugeField& gauge);

// ---------------------------------------------------------------- families

struct ScalarTerm {
  std::vector<int> powers;
  double coefficient = 0.0;
};
using ScalarPolynomial = std::vector<ScalarTerm>;

double evaluate(const ScalarPolynomial& poly, const Vector& p);
Vector gradient(const ScalarPolynomial& poly, const Vector& p);
Eigen::MatrixXd hessian(const ScalarPolynomial& poly, const Vector& p);

/// coefficient * prod_j x_j^powers[j], contributing to A_component.
struct FormTerm {
  int component = 0;
  std::vector<int> powers;
  AlgebraElement coefficient = AlgebraElement::zero(GroupKind::u1());
};

Connection zero_connection(GroupKind kind, Chart chart);

/// (B/2)(x dy - y dx) X on the first two coordinates, X = i for U(1) unless a
/// generator is given. Curvature Omega[e1, e2] = B X everywhere.
Connection constant_field_connection(double field_strength, Chart chart,
                                     std::optional<AlgebraElement> generator = std::nullopt);

/// sum_k X_k dx_k with constant X_k.
Connection constant_coefficient_connection(std::vector<AlgebraElement> generators, Chart chart);

Connection polynomial_connection(GroupKind kind, Chart chart, std::vector<FormTerm> terms);

/// A_k(p) = amplitude * exp(-|p - center|^2 / (2 width^2)) X_k.
Connection gaussian_bump_connection(std::vector<AlgebraElement> generators, Vector center, double width,
                                    double amplitude, Chart chart);

/// g^-1 dg.
Connection pure_gauge_connection(const GaugeField& gauge, Chart chart);

GaugeField identity_gauge(GroupKind kind);
GaugeField constant_gauge(GroupElement element);
/// g(p) = exp(i phi(p)).
GaugeField u1_phase_gauge(ScalarPolynomial phase);
/// g(p) = exp(phi_1(p) X_1) exp(phi_2(p) X_2) ... with exact derivatives.
GaugeField exp_product_gauge(std::vector<std::pair<AlgebraElement, ScalarPolynomial>> factors);

}  // namespace holonomy
