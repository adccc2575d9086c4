#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "holonomy/random.hpp"
#include "holonomy/verify.hpp"

using namespace holonomy;

namespace {

constexpr double kPi = std::numbers::pi;

Vector vec(double x, double y) {
  Vector v(2);
  v << x, y;
  return v;
}

Chart disk(double r = 1.0) { return Chart::ball(Vector::Zero(2), r); }

// Ramanujan's second approximation, accurate to ~1e-10 relative for b/a = 1/2.
double ellipse_perimeter(double a, double b) {
  const double h = std::pow((a - b) / (a + b), 2);
  return kPi * (a + b) * (1 + 3 * h / (10 + std::sqrt(4 - 3 * h)));
}

}  // namespace

TEST(Surface, BoundaryLoopIsClosed) {
  const auto s = Surface::quadratic(vec(0.1, 0), Eigen::MatrixXd::Identity(2, 2) * 0.5, vec(0.1, 0), vec(0, 0.1),
                                    vec(0.05, 0.05));
  EXPECT_TRUE(s.boundary_loop().is_closed());
  const Vector q = vec(0.3, -0.2);
  const double h = 1e-6;
  const Eigen::MatrixXd fd =
      (Eigen::MatrixXd(2, 2) << (s.map(q + vec(h, 0)) - s.map(q - vec(h, 0))) / (2 * h),
       (s.map(q + vec(0, h)) - s.map(q - vec(0, h))) / (2 * h))
          .finished();
  EXPECT_LT((s.jacobian(q) - fd).norm(), 1e-9);
}

TEST(Pullback, Examples) {
  const auto zero = zero_connection(GroupKind::su2(), disk());
  EXPECT_EQ(algebra_norm(pullback_curvature(zero, Surface::identity_disk(), vec(0.2, 0.1))), 0.0);
  const auto field = constant_field_connection(1.5, disk(2.0));
  EXPECT_NEAR(pullback_curvature(field, Surface::identity_disk(), vec(0.2, 0.1)).matrix()(0, 0).imag(), 1.5, 1e-12);
  // Scaling oracle: sigma = R q multiplies the pullback by R^2.
  Rng rng(61);
  const auto c = random_su2_polynomial_connection(rng, disk(2.0));
  const double radius = 1.7;
  const Vector q = vec(0.3, 0.4);
  const Matrix scaled = pullback_curvature(c, Surface::scaled_disk(Vector::Zero(2), radius), q).matrix();
  const Matrix direct = c.curvature_matrix(radius * q, vec(1, 0), vec(0, 1));
  EXPECT_LT((scaled - radius * radius * direct).norm(), 1e-10);
  try {
    pullback_curvature(c, Surface::identity_disk(), vec(1, 0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OutOfDisk);
  }
}

TEST(CurvatureMass, ClosedForms) {
  EXPECT_EQ(curvature_mass(zero_connection(GroupKind::u1(), disk()), Surface::identity_disk(), {16, 32}), 0.0);
  EXPECT_NEAR(curvature_mass(constant_field_connection(1.0, disk()), Surface::identity_disk(), {256, 256}), kPi, 1e-6);
  const auto x = AlgebraElement::su2(0.5, 0, 0);
  const auto y = AlgebraElement::su2(0, 0.5, 0);
  const auto c = constant_coefficient_connection({x, y}, disk());
  EXPECT_NEAR(curvature_mass(c, Surface::identity_disk(), {64, 64}), algebra_norm(commutator(x, y)) * kPi, 1e-5);
  EXPECT_THROW(curvature_mass(c, Surface::identity_disk(), {8, 32}), Error);
}

TEST(CurvatureMass, QuadratureConvergesAtSecondOrder) {
  const auto c = gaussian_bump_connection({AlgebraElement::su2(0.3, 0.2, 0), AlgebraElement::su2(0, 0.1, 0.4)},
                                          vec(0.2, -0.1), 0.4, 2.0, disk());
  const double ref = curvature_mass(c, Surface::identity_disk(), {512, 512});
  const double e32 = std::abs(curvature_mass(c, Surface::identity_disk(), {32, 32}) - ref);
  const double e64 = std::abs(curvature_mass(c, Surface::identity_disk(), {64, 64}) - ref);
  EXPECT_GT(e32 / e64, 3.0);
}

TEST(CurvatureMass, MonotoneInRadius) {
  Rng rng(62);
  const auto c = random_su2_polynomial_connection(rng, disk());
  double previous = 0.0;
  for (double r : {0.2, 0.4, 0.6, 0.8}) {
    const double m = curvature_mass(c, Surface::scaled_disk(Vector::Zero(2), r), {64, 64});
    EXPECT_GE(m, previous);
    previous = m;
  }
}

TEST(Theorem, AbelianEquality) {
  for (double b : {0.5, 1.0, 3.0}) {
    const auto r = check_theorem(constant_field_connection(b, disk()), Surface::identity_disk(), {256, 256}, 4096);
    EXPECT_TRUE(r.pass);
    EXPECT_NEAR(r.lhs, b * kPi, 1e-5);
    EXPECT_NEAR(r.rhs, b * kPi, 1e-5);
  }
  const auto zero = check_theorem(zero_connection(GroupKind::su2(), disk()), Surface::identity_disk(), {16, 32}, 64);
  EXPECT_TRUE(zero.pass);
  EXPECT_EQ(zero.lhs, 0.0);
}

TEST(Theorem, RandomSU2) {
  Rng rng(63);
  for (int trial = 0; trial < 10; ++trial) {
    const auto c = random_su2_polynomial_connection(rng, disk());
    EXPECT_TRUE(check_theorem(c, Surface::identity_disk(), {32, 64}, 2048).pass);
  }
}

TEST(Theorem, EmbeddedSurfaceInR3) {
  const Chart ball = Chart::ball(Vector::Zero(3), 2.0);
  const auto x = AlgebraElement::su2(0.4, 0, 0);
  const auto y = AlgebraElement::su2(0, 0.4, 0);
  const auto z = AlgebraElement::su2(0, 0, 0.4);
  const auto c = constant_coefficient_connection({x, y, z}, ball);
  Eigen::MatrixXd lin(3, 2);
  lin << 1, 0, 0, 1, 0.2, 0.1;
  Vector zero3 = Vector::Zero(3);
  Vector bend(3);
  bend << 0, 0, 0.3;
  const auto s = Surface::quadratic(zero3, lin, bend, zero3, bend);
  EXPECT_TRUE(check_theorem(c, s, {64, 64}, 4096).pass);
}

TEST(Corollary, CircleAndEllipse) {
  const auto c = constant_field_connection(1.0, disk(2.0));
  const auto circle = check_corollary_planar(c, Path::circle(Vector::Zero(2), 0.8),
                                             Surface::scaled_disk(Vector::Zero(2), 0.8), {64, 128}, 4096);
  EXPECT_TRUE(circle.pass);
  EXPECT_NEAR(circle.slack, 0.0, 1e-5);
  EXPECT_NEAR(circle.lhs, kPi * 0.64, 1e-9);
  const auto ellipse = check_corollary_planar(c, Path::ellipse(Vector::Zero(2), 1, 0.5),
                                              Surface::ellipse(Vector::Zero(2), 1, 0.5), {64, 128}, 4096);
  EXPECT_TRUE(ellipse.pass);
  EXPECT_NEAR(ellipse.lhs, kPi * 0.5, 1e-9);
  const double p = ellipse_perimeter(1, 0.5);
  EXPECT_NEAR(ellipse.rhs, p * p / (4 * kPi), 1e-6);
  EXPECT_GE(ellipse.slack, 0.1 * ellipse.rhs);
  try {
    check_corollary_planar(c, Path::circle(Vector::Zero(2), 0.8), std::nullopt, {64, 128}, 64);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::FillingMissing);
  }
}

TEST(Lemma, AbelianOracleSelectsMinusBranch) {
  // g_r(1) = exp(-i B pi r^2), so dG/dr = -2 pi r B i G.
  const auto c = constant_field_connection(0.25, disk(2.0));
  const auto r = check_derivative_lemma(c, 0.5, 8192, 1e-4);
  EXPECT_EQ(r.note, "minus");
  EXPECT_LE(r.details.at("residual_minus"), 1e-8);
  EXPECT_GT(r.details.at("residual_plus"), 1.0);
}

TEST(Lemma, SU2ConstantCoefficients) {
  const auto c = constant_coefficient_connection({AlgebraElement::su2(0.5, 0, 0), AlgebraElement::su2(0, 0.5, 0)},
                                                 disk(2.0));
  const auto r = check_derivative_lemma(c, 0.5, 8192, 1e-3);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.note, "minus");
  EXPECT_LE(r.lhs, 1e-5);
}

TEST(Lemma, RandomSU2AgreesOnSign) {
  Rng rng(64);
  for (int trial = 0; trial < 3; ++trial) {
    const auto c = random_su2_polynomial_connection(rng, disk(), 0.5);
    // Generic polynomials have a larger third radial derivative than the
    // constant C allows for, so only the branch and the h^2 decay are checked.
    const auto coarse = check_derivative_lemma(c, 0.5, 8192, 1e-3);
    const auto fine = check_derivative_lemma(c, 0.5, 8192, 2.5e-4);
    EXPECT_EQ(coarse.note, "minus");
    EXPECT_EQ(fine.note, "minus");
    EXPECT_LT(fine.lhs, 1e-3 * fine.details.at("residual_plus"));
    const double ratio = coarse.lhs / fine.lhs;
    EXPECT_GT(ratio, 12.0) << coarse.lhs << " " << fine.lhs;
    EXPECT_LT(ratio, 20.0) << coarse.lhs << " " << fine.lhs;
  }
}

TEST(Lemma, ZeroFamilyAndErrors) {
  const auto zero = zero_connection(GroupKind::su2(), disk());
  const auto r = check_derivative_lemma(zero, 0.5, 64, 1e-2);
  EXPECT_EQ(r.lhs, 0.0);
  try {
    check_derivative_lemma(zero, 0.95, 64, 0.09);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RadiusOutOfRange);
  }
  EXPECT_THROW(check_derivative_lemma(zero, 0.5, 64, 0.1), Error);
}

TEST(Radial, ConstantFieldEquality) {
  const auto c = constant_field_connection(1.0, disk(2.0));
  const auto r = check_radial_estimate(c, 0.5, 1e-3, 4096);
  EXPECT_NEAR(r.lhs, r.rhs, 1e-4);
  EXPECT_NEAR(r.rhs, 2 * kPi * 0.5, 1e-9);
  EXPECT_TRUE(r.pass);
}

TEST(Radial, RandomSU2) {
  Rng rng(65);
  for (int trial = 0; trial < 10; ++trial) {
    const auto c = random_su2_polynomial_connection(rng, disk());
    EXPECT_TRUE(check_radial_estimate(c, rng.uniform(0.2, 0.8), 1e-3, 2048, 256).pass);
  }
  EXPECT_DOUBLE_EQ(radial_tolerance(1e-3, 1000), 1e-4 + 1e-5 + 1e-4);
}

TEST(Sweep, ConstantFieldAndBump) {
  const auto c = constant_field_connection(2.0, disk(2.0));
  const auto rows = sweep_radius(c, {0.5, 1.0, 1.5}, 2048, {64, 64});
  ASSERT_EQ(rows.size(), 3u);
  for (const auto& row : rows) {
    const double r = row.details.at("radius");
    EXPECT_NEAR(row.lhs, 2 * kPi * r * r, 1e-9);
    EXPECT_NEAR(row.slack, 0.0, 1e-9);
  }
  const auto bump = gaussian_bump_connection({AlgebraElement::su2(0.3, 0.2, 0), AlgebraElement::su2(0, 0.1, 0.4)},
                                             vec(0.2, -0.1), 0.4, 2.0, disk(2.0));
  for (const auto& row : sweep_radius(bump, {0.25, 0.75, 1.25, 1.75}, 2048, {64, 64})) EXPECT_TRUE(row.pass);
  EXPECT_THROW(sweep_radius(c, {1.0, 0.5}, 64), Error);
}
