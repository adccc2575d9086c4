#include <gtest/gtest.h>

#include "holonomy/connection.hpp"
#include "holonomy/random.hpp"

using namespace holonomy;

namespace {

Vector vec(double x, double y) {
  Vector v(2);
  v << x, y;
  return v;
}

Chart unit_disk() { return Chart::ball(Vector::Zero(2), 1.0); }

// d omega[e1, e2] + [A1, A2] from central differences of the coefficients.
Matrix fd_curvature(const Connection& c, const Vector& p, double h = 1e-5) {
  auto coeff = [&](const Vector& q, int k) { return c.coefficients(q)[k]; };
  const Matrix d1a2 = (coeff(p + vec(h, 0), 1) - coeff(p - vec(h, 0), 1)) / (2 * h);
  const Matrix d2a1 = (coeff(p + vec(0, h), 0) - coeff(p - vec(0, h), 0)) / (2 * h);
  const Matrix a1 = coeff(p, 0);
  const Matrix a2 = coeff(p, 1);
  return d1a2 - d2a1 + a1 * a2 - a2 * a1;
}

}  // namespace

TEST(Chart, MembershipAndScale) {
  const Chart box = Chart::box(vec(-1, -2), vec(1, 2));
  EXPECT_TRUE(box.contains(vec(1, 2)));
  EXPECT_FALSE(box.contains(vec(1.01, 0)));
  EXPECT_DOUBLE_EQ(box.scale(), 2.0);
  EXPECT_DOUBLE_EQ(box.inscribed_radius(vec(0, 0)), 1.0);
  const Chart ball = Chart::ball(vec(0, 0), 1.0);
  EXPECT_TRUE(ball.contains(vec(1, 0)));
  EXPECT_FALSE(ball.contains(vec(0.8, 0.8)));
}

TEST(Connection, ZeroFamilyIsFlat) {
  const auto c = zero_connection(GroupKind::su2(), unit_disk());
  EXPECT_EQ(algebra_norm(curvature(c, vec(0.1, 0.2), vec(1, 0), vec(0, 1)).value), 0.0);
}

TEST(Connection, ConstantFieldCurvature) {
  for (double b : {0.5, 1.0, 3.0}) {
    const auto c = constant_field_connection(b, unit_disk());
    const auto omega = curvature(c, vec(0.3, -0.4), vec(1, 0), vec(0, 1)).value.matrix();
    EXPECT_NEAR(omega(0, 0).imag(), b, 1e-12);
    EXPECT_NEAR(omega(0, 0).real(), 0.0, 1e-12);
  }
}

TEST(Connection, CurvatureMatchesFiniteDifferences) {
  Rng rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const auto c = random_su2_polynomial_connection(rng, unit_disk());
    const Vector p = rng.uniform_vector(2, -0.5, 0.5);
    const Matrix analytic = curvature(c, p, vec(1, 0), vec(0, 1)).value.matrix();
    EXPECT_LT((analytic - fd_curvature(c, p)).norm(), 1e-8);
  }
}

TEST(Connection, CurvatureIsBilinearAndAlternating) {
  Rng rng(22);
  const auto c = random_su2_polynomial_connection(rng, unit_disk());
  const Vector p = vec(0.1, 0.2);
  const Vector u = vec(0.3, -0.7);
  const Vector v = vec(1.1, 0.4);
  const Matrix uv = c.curvature_matrix(p, u, v);
  EXPECT_LT((uv + c.curvature_matrix(p, v, u)).norm(), 1e-12);
  const double det = u[0] * v[1] - u[1] * v[0];
  EXPECT_LT((uv - det * c.curvature_matrix(p, vec(1, 0), vec(0, 1))).norm(), 1e-10);
}

TEST(Connection, SU2ConstantCoefficientCurvatureIsCommutator) {
  const auto x = AlgebraElement::su2(0.5, 0, 0);
  const auto y = AlgebraElement::su2(0, 0.5, 0);
  const auto c = constant_coefficient_connection({x, y}, unit_disk());
  const Matrix omega = curvature(c, vec(0.2, 0.2), vec(1, 0), vec(0, 1)).value.matrix();
  EXPECT_LT((omega - commutator(x, y).matrix()).norm(), 1e-14);
}

TEST(Connection, GaussianBumpJacobianMatchesDifferences) {
  const auto c = gaussian_bump_connection({AlgebraElement::su2(0.3, 0.2, 0), AlgebraElement::su2(0, 0.1, 0.4)},
                                          vec(0.2, -0.1), 0.4, 2.0, unit_disk());
  const Vector p = vec(0.3, 0.1);
  EXPECT_LT((curvature(c, p, vec(1, 0), vec(0, 1)).value.matrix() - fd_curvature(c, p)).norm(), 1e-8);
}

TEST(Connection, OutOfChartThrows) {
  const auto c = zero_connection(GroupKind::u1(), unit_disk());
  try {
    eval_form(c, vec(2, 0), vec(1, 0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OutOfChart);
  }
}

TEST(Gauge, CurvatureTransformsByConjugation) {
  Rng rng(23);
  for (int trial = 0; trial < 5; ++trial) {
    const auto c = random_su2_polynomial_connection(rng, unit_disk());
    const auto g = random_su2_gauge(rng);
    const auto t = gauge_transform(c, g);
    const Vector p = rng.uniform_vector(2, -0.5, 0.5);
    const Matrix gp = g.value(p);
    const Matrix expected = gp.adjoint() * c.curvature_matrix(p, vec(1, 0), vec(0, 1)) * gp;
    EXPECT_LT((t.curvature_matrix(p, vec(1, 0), vec(0, 1)) - expected).norm(), 1e-8);
  }
}

TEST(Gauge, TransformedFormMatchesDefinition) {
  Rng rng(24);
  const auto c = random_su2_polynomial_connection(rng, unit_disk());
  const auto g = random_su2_gauge(rng);
  const auto t = gauge_transform(c, g);
  const Vector p = vec(0.2, -0.3);
  const Vector v = vec(0.6, 0.8);
  const double h = 1e-6;
  const Matrix dg = (g.value(p + h * v) - g.value(p - h * v)) / (2 * h);
  const Matrix gp = g.value(p);
  const Matrix expected = gp.adjoint() * dg + gp.adjoint() * c.form(p, v) * gp;
  EXPECT_LT((t.form(p, v) - expected).norm(), 1e-8);
}

TEST(Gauge, PureGaugeIsFlat) {
  Rng rng(25);
  const auto g = random_su2_gauge(rng);
  const auto c = pure_gauge_connection(g, unit_disk());
  EXPECT_LT(algebra_norm(curvature(c, vec(0.1, 0.4), vec(1, 0), vec(0, 1)).value), 1e-9);
}

TEST(Gauge, U1PhaseShiftsFormByGradient) {
  ScalarPolynomial phi = {{{1, 1}, 0.7}, {{2, 0}, -0.2}};
  const auto g = u1_phase_gauge(phi);
  const auto c = gauge_transform(zero_connection(GroupKind::u1(), unit_disk()), g);
  const Vector p = vec(0.3, 0.5);
  // g^-1 dg = i d phi.
  EXPECT_NEAR(c.form(p, vec(1, 0))(0, 0).imag(), 0.7 * 0.5 - 0.4 * 0.3, 1e-12);
  EXPECT_NEAR(c.form(p, vec(0, 1))(0, 0).imag(), 0.7 * 0.3, 1e-12);
}

TEST(Polynomial, ScalarHelpers) {
  ScalarPolynomial poly = {{{2, 1}, 3.0}, {{0, 0}, 1.0}};
  const Vector p = vec(2, 3);
  EXPECT_DOUBLE_EQ(evaluate(poly, p), 3 * 4 * 3 + 1);
  EXPECT_DOUBLE_EQ(gradient(poly, p)[0], 3 * 2 * 2 * 3);
  EXPECT_DOUBLE_EQ(gradient(poly, p)[1], 3 * 4);
  EXPECT_DOUBLE_EQ(hessian(poly, p)(0, 1), 3 * 2 * 2);
}

TEST(Polynomial, RejectsBadTerms) {
  EXPECT_THROW(polynomial_connection(GroupKind::u1(), unit_disk(), {{3, {0, 0}, AlgebraElement::u1(1)}}), Error);
  EXPECT_THROW(polynomial_connection(GroupKind::su2(), unit_disk(), {{0, {0, 0}, AlgebraElement::u1(1)}}), Error);
}
