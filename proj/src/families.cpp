#include <cmath>

#include "holonomy/connection.hpp"

namespace holonomy {

namespace {

double monomial(const std::vector<int>& powers, const Vector& p) {
  double out = 1.0;
  for (std::size_t j = 0; j < powers.size(); ++j) {
    for (int e = 0; e < powers[j]; ++e) out *= p[static_cast<Eigen::Index>(j)];
  }
  return out;
}

// d/dx_j of prod_i x_i^powers[i].
double monomial_derivative(std::vector<int> powers, std::size_t j, const Vector& p) {
  if (j >= powers.size() || powers[j] == 0) return 0.0;
  const double factor = powers[j];
  --powers[j];
  return factor * monomial(powers, p);
}

void check_powers(const std::vector<int>& powers, int dim) {
  if (static_cast<int>(powers.size()) != dim) {
    throw Error(ErrorCode::InvalidArgument, "monomial has " + std::to_string(powers.size()) +
                                                " exponents, expected " + std::to_string(dim));
  }
  for (int e : powers) {
    if (e < 0) throw Error(ErrorCode::InvalidArgument, "monomial exponents must be non-negative");
  }
}

Matrix zeros(GroupKind kind) { return Matrix::Zero(kind.matrix_dim(), kind.matrix_dim()); }

class ZeroField final : public FormField {
 public:
  ZeroField(GroupKind kind, int dim) : kind_(kind), dim_(dim) {}

  GroupKind kind() const override { return kind_; }
  int dim() const override { return dim_; }
  std::string family() const override { return "zero"; }
  FormCoefficients coefficients(const Vector&) const override { return FormCoefficients(dim_, zeros(kind_)); }
  std::optional<FormJacobian> jacobian(const Vector&) const override {
    return FormJacobian(dim_, FormCoefficients(dim_, zeros(kind_)));
  }

 private:
  GroupKind kind_;
  int dim_;
};

class ConstantFieldForm final : public FormField {
 public:
  ConstantFieldForm(double strength, AlgebraElement generator, int dim)
      : strength_(strength), generator_(std::move(generator)), dim_(dim) {}

  GroupKind kind() const override { return generator_.kind(); }
  int dim() const override { return dim_; }
  std::string family() const override { return "constant-field"; }

  FormCoefficients coefficients(const Vector& p) const override {
    FormCoefficients c(dim_, zeros(kind()));
    c[0] = (-0.5 * strength_ * p[1]) * generator_.matrix();
    c[1] = (0.5 * strength_ * p[0]) * generator_.matrix();
    return c;
  }

  std::optional<FormJacobian> jacobian(const Vector&) const override {
    FormJacobian jac(dim_, FormCoefficients(dim_, zeros(kind())));
    jac[1][0] = (-0.5 * strength_) * generator_.matrix();
    jac[0][1] = (0.5 * strength_) * generator_.matrix();
    return jac;
  }

 private:
  double strength_;
  AlgebraElement generator_;
  int dim_;
};

class ConstantCoefficientForm final : public FormField {
 public:
  explicit ConstantCoefficientForm(std::vector<AlgebraElement> generators) : generators_(std::move(generators)) {}

  GroupKind kind() const override { return generators_.front().kind(); }
  int dim() const override { return static_cast<int>(generators_.size()); }
  std::string family() const override { return "constant-coefficients"; }

  FormCoefficients coefficients(const Vector&) const override {
    FormCoefficients c;
    c.reserve(generators_.size());
    for (const auto& x : generators_) c.push_back(x.matrix());
    return c;
  }

  std::optional<FormJacobian> jacobian(const Vector&) const override {
    return FormJacobian(dim(), FormCoefficients(dim(), zeros(kind())));
  }

 private:
  std::vector<AlgebraElement> generators_;
};

class PolynomialForm final : public FormField {
 public:
  PolynomialForm(GroupKind kind, int dim, std::vector<FormTerm> terms)
      : kind_(kind), dim_(dim), terms_(std::move(terms)) {}

  GroupKind kind() const override { return kind_; }
  int dim() const override { return dim_; }
  std::string family() const override { return "polynomial"; }

  FormCoefficients coefficients(const Vector& p) const override {
    FormCoefficients c(dim_, zeros(kind_));
    for (const auto& term : terms_) c[term.component] += monomial(term.powers, p) * term.coefficient.matrix();
    return c;
  }

  std::optional<FormJacobian> jacobian(const Vector& p) const override {
    FormJacobian jac(dim_, FormCoefficients(dim_, zeros(kind_)));
    for (const auto& term : terms_) {
      for (int j = 0; j < dim_; ++j) {
        const double d = monomial_derivative(term.powers, j, p);
        if (d != 0.0) jac[j][term.component] += d * term.coefficient.matrix();
      }
    }
    return jac;
  }

 private:
  GroupKind kind_;
  int dim_;
  std::vector<FormTerm> terms_;
};

class GaussianBumpForm final : public FormField {
 public:
  GaussianBumpForm(std::vector<AlgebraElement> generators, Vector center, double width, double amplitude)
      : generators_(std::move(generators)), center_(std::move(center)), width_(width), amplitude_(amplitude) {}

  GroupKind kind() const override { return generators_.front().kind(); }
  int dim() const override { return static_cast<int>(generators_.size()); }
  std::string family() const override { return "gaussian-bump"; }

  FormCoefficients coefficients(const Vector& p) const override {
    const double f = envelope(p);
    FormCoefficients c;
    c.reserve(generators_.size());
    for (const auto& x : generators_) c.push_back(f * x.matrix());
    return c;
  }

  std::optional<FormJacobian> jacobian(const Vector& p) const override {
    const double f = envelope(p);
    FormJacobian jac(dim());
    for (int j = 0; j < dim(); ++j) {
      const double df = -f * (p[j] - center_[j]) / (width_ * width_);
      for (const auto& x : generators_) jac[j].push_back(df * x.matrix());
    }
    return jac;
  }

 private:
  double envelope(const Vector& p) const {
    return amplitude_ * std::exp(-(p - center_).squaredNorm() / (2.0 * width_ * width_));
  }

  std::vector<AlgebraElement> generators_;
  Vector center_;
  double width_;
  double amplitude_;
};

// ------------------------------------------------------------------ gauges

class IdentityGauge final : public GaugeMap {
 public:
  explicit IdentityGauge(GroupKind kind) : kind_(kind) {}

  GroupKind kind() const override { return kind_; }
  std::string family() const override { return "identity"; }
  Matrix value(const Vector&) const override { return GroupElement::identity(kind_).matrix(); }
  std::optional<std::vector<Matrix>> differential(const Vector& p) const override {
    return std::vector<Matrix>(p.size(), zeros(kind_));
  }
  std::optional<std::vector<std::vector<Matrix>>> hessian(const Vector& p) const override {
    return std::vector<std::vector<Matrix>>(p.size(), std::vector<Matrix>(p.size(), zeros(kind_)));
  }

 private:
  GroupKind kind_;
};

class ConstantGauge final : public GaugeMap {
 public:
  explicit ConstantGauge(GroupElement element) : element_(std::move(element)) {}

  GroupKind kind() const override { return element_.kind(); }
  std::string family() const override { return "constant"; }
  Matrix value(const Vector&) const override { return element_.matrix(); }
  std::optional<std::vector<Matrix>> differential(const Vector& p) const override {
    return std::vector<Matrix>(p.size(), zeros(kind()));
  }
  std::optional<std::vector<std::vector<Matrix>>> hessian(const Vector& p) const override {
    return std::vector<std::vector<Matrix>>(p.size(), std::vector<Matrix>(p.size(), zeros(kind())));
  }

 private:
  GroupElement element_;
};

// prod_i exp(phi_i(p) X_i). U(1) phase gauges are the one-factor case X = i.
class ExpProductGauge final : public GaugeMap {
 public:
  ExpProductGauge(std::vector<std::pair<AlgebraElement, ScalarPolynomial>> factors, std::string family)
      : factors_(std::move(factors)), family_(std::move(family)) {}

  GroupKind kind() const override { return factors_.front().first.kind(); }
  std::string family() const override { return family_; }

  Matrix value(const Vector& p) const override {
    Matrix g = GroupElement::identity(kind()).matrix();
    for (const auto& [x, phi] : factors_) g = g * exp_map(x * evaluate(phi, p)).matrix();
    return g;
  }

  std::optional<std::vector<Matrix>> differential(const Vector& p) const override {
    const auto f = factor_values(p);
    std::vector<Matrix> out;
    for (Eigen::Index j = 0; j < p.size(); ++j) {
      Matrix sum = zeros(kind());
      for (std::size_t i = 0; i < factors_.size(); ++i) {
        const double dphi = gradient(factors_[i].second, p)[j];
        if (dphi == 0.0) continue;
        sum += product(f, i, dphi * factors_[i].first.matrix() * f[i]);
      }
      out.push_back(std::move(sum));
    }
    return out;
  }

  std::optional<std::vector<std::vector<Matrix>>> hessian(const Vector& p) const override {
    const auto f = factor_values(p);
    const auto m = static_cast<std::size_t>(p.size());
    const std::size_t count = factors_.size();
    std::vector<Vector> grads;
    std::vector<Eigen::MatrixXd> hessians;
    for (const auto& factor : factors_) {
      grads.push_back(gradient(factor.second, p));
      hessians.push_back(holonomy::hessian(factor.second, p));
    }
    std::vector<std::vector<Matrix>> out(m, std::vector<Matrix>(m, zeros(kind())));
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t k = 0; k < m; ++k) {
        Matrix sum = zeros(kind());
        for (std::size_t i = 0; i < count; ++i) {
          const Matrix& x = factors_[i].first.matrix();
          // d_j d_k exp(phi X) = (d_jk phi X + d_j phi d_k phi X^2) exp(phi X)
          const Matrix second =
              (hessians[i](j, k) * x + grads[i][j] * grads[i][k] * x * x) * f[i];
          sum += product(f, i, second);
          for (std::size_t l = 0; l < count; ++l) {
            if (l == i) continue;
            const Matrix dj = grads[i][j] * x * f[i];
            const Matrix dk = grads[l][k] * factors_[l].first.matrix() * f[l];
            sum += product2(f, i, dj, l, dk);
          }
        }
        out[j][k] = std::move(sum);
      }
    }
    return out;
  }

 private:
  std::vector<Matrix> factor_values(const Vector& p) const {
    std::vector<Matrix> f;
    for (const auto& [x, phi] : factors_) f.push_back(exp_map(x * evaluate(phi, p)).matrix());
    return f;
  }

  // Product of the factors with factor i replaced.
  Matrix product(const std::vector<Matrix>& f, std::size_t i, const Matrix& replacement) const {
    Matrix out = GroupElement::identity(kind()).matrix();
    for (std::size_t a = 0; a < f.size(); ++a) out = out * (a == i ? replacement : f[a]);
    return out;
  }

  Matrix product2(const std::vector<Matrix>& f, std::size_t i, const Matrix& ri, std::size_t l,
                  const Matrix& rl) const {
    Matrix out = GroupElement::identity(kind()).matrix();
    for (std::size_t a = 0; a < f.size(); ++a) out = out * (a == i ? ri : (a == l ? rl : f[a]));
    return out;
  }

  std::vector<std::pair<AlgebraElement, ScalarPolynomial>> factors_;
  std::string family_;
};

}  // namespace

double evaluate(const ScalarPolynomial& poly, const Vector& p) {
  double out = 0.0;
  for (const auto& term : poly) out += term.coefficient * monomial(term.powers, p);
  return out;
}

Vector gradient(const ScalarPolynomial& poly, const Vector& p) {
  Vector g = Vector::Zero(p.size());
  for (const auto& term : poly) {
    for (Eigen::Index j = 0; j < p.size(); ++j) {
      g[j] += term.coefficient * monomial_derivative(term.powers, static_cast<std::size_t>(j), p);
    }
  }
  return g;
}

Eigen::MatrixXd hessian(const ScalarPolynomial& poly, const Vector& p) {
  const auto m = p.size();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(m, m);
  for (const auto& term : poly) {
    for (Eigen::Index j = 0; j < m; ++j) {
      for (Eigen::Index k = 0; k < m; ++k) {
        std::vector<int> powers = term.powers;
        const auto jj = static_cast<std::size_t>(j);
        const auto kk = static_cast<std::size_t>(k);
        if (jj >= powers.size() || kk >= powers.size() || powers[jj] == 0) continue;
        double factor = powers[jj];
        --powers[jj];
        if (powers[kk] == 0) continue;
        factor *= powers[kk];
        --powers[kk];
        h(j, k) += term.coefficient * factor * monomial(powers, p);
      }
    }
  }
  return h;
}

Connection zero_connection(GroupKind kind, Chart chart) {
  const int dim = chart.dim();
  return Connection(std::move(chart), std::make_shared<ZeroField>(kind, dim));
}

Connection constant_field_connection(double field_strength, Chart chart, std::optional<AlgebraElement> generator) {
  if (chart.dim() < 2) throw Error(ErrorCode::InvalidArgument, "constant-field family needs dimension >= 2");
  AlgebraElement x = generator ? *generator : AlgebraElement::u1(1.0);
  const int dim = chart.dim();
  return Connection(std::move(chart), std::make_shared<ConstantFieldForm>(field_strength, std::move(x), dim));
}

Connection constant_coefficient_connection(std::vector<AlgebraElement> generators, Chart chart) {
  if (static_cast<int>(generators.size()) != chart.dim()) {
    throw Error(ErrorCode::InvalidArgument, "need one generator per chart coordinate");
  }
  for (const auto& x : generators) {
    if (!(x.kind() == generators.front().kind())) throw Error(ErrorCode::WrongGroup, "mixed generator groups");
  }
  return Connection(std::move(chart), std::make_shared<ConstantCoefficientForm>(std::move(generators)));
}

Connection polynomial_connection(GroupKind kind, Chart chart, std::vector<FormTerm> terms) {
  const int dim = chart.dim();
  for (const auto& term : terms) {
    check_powers(term.powers, dim);
    if (term.component < 0 || term.component >= dim) {
      throw Error(ErrorCode::InvalidArgument, "polynomial term component out of range");
    }
    if (!(term.coefficient.kind() == kind)) throw Error(ErrorCode::WrongGroup, "polynomial coefficient group");
  }
  return Connection(std::move(chart), std::make_shared<PolynomialForm>(kind, dim, std::move(terms)));
}

Connection gaussian_bump_connection(std::vector<AlgebraElement> generators, Vector center, double width,
                                    double amplitude, Chart chart) {
  if (static_cast<int>(generators.size()) != chart.dim() || center.size() != chart.dim()) {
    throw Error(ErrorCode::InvalidArgument, "gaussian-bump needs one generator per coordinate and a matching center");
  }
  if (!(width > 0)) throw Error(ErrorCode::InvalidArgument, "gaussian-bump width must be positive");
  return Connection(std::move(chart),
                    std::make_shared<GaussianBumpForm>(std::move(generators), std::move(center), width, amplitude));
}

Connection pure_gauge_connection(const GaugeField& gauge, Chart chart) {
  return gauge_transform(zero_connection(gauge.kind(), std::move(chart)), gauge);
}

GaugeField identity_gauge(GroupKind kind) { return GaugeField(std::make_shared<IdentityGauge>(kind)); }

GaugeField constant_gauge(GroupElement element) {
  return GaugeField(std::make_shared<ConstantGauge>(std::move(element)));
}

GaugeField u1_phase_gauge(ScalarPolynomial phase) {
  std::vector<std::pair<AlgebraElement, ScalarPolynomial>> factors;
  factors.emplace_back(AlgebraElement::u1(1.0), std::move(phase));
  return GaugeField(std::make_shared<ExpProductGauge>(std::move(factors), "u1-phase"));
}

GaugeField exp_product_gauge(std::vector<std::pair<AlgebraElement, ScalarPolynomial>> factors) {
  if (factors.empty()) throw Error(ErrorCode::InvalidArgument, "exp-product gauge needs at least one factor");
  for (const auto& f : factors) {
    if (!(f.first.kind() == factors.front().first.kind())) throw Error(ErrorCode::WrongGroup, "mixed factor groups");
  }
  return GaugeField(std::make_shared<ExpProductGauge>(std::move(factors), "exp-product"));
}

}  // namespace holonomy
