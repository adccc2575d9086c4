#include <gtest/gtest.h>

#include <cmath>

#include "holonomy/amplitude.hpp"
#include "holonomy/gauge_axial.hpp"
#include "holonomy/random.hpp"

using namespace holonomy;

namespace {

Vector vec(double x, double y) {
  Vector v(2);
  v << x, y;
  return v;
}

Chart square() { return Chart::box(vec(-1, -1), vec(1, 1)); }

// Axial component depends only on x, so transport along y is a pure exponential.
Connection gentle_su2() {
  std::vector<FormTerm> terms = {
      {0, {0, 0}, AlgebraElement::su2(0.5, 0, 0)},   {0, {0, 1}, AlgebraElement::su2(0, 0.3, 0)},
      {0, {1, 1}, AlgebraElement::su2(0, 0, 0.4)},   {0, {0, 2}, AlgebraElement::su2(0.2, 0.1, 0)},
      {1, {0, 0}, AlgebraElement::su2(0.12, 0, 0)},  {1, {1, 0}, AlgebraElement::su2(0, 0, 0.12)},
  };
  return polynomial_connection(GroupKind::su2(), square(), terms);
}

}  // namespace

TEST(AxialGauge, ZeroFamilyGivesIdentity) {
  const auto c = zero_connection(GroupKind::su2(), square());
  const auto r = axial_gauge(c, vec(0, 1), 16, 64);
  EXPECT_EQ(r.residual, 0.0);
  EXPECT_LT((r.gauge.value(vec(0.3, 0.2)) - Matrix::Identity(2, 2)).norm(), 1e-15);
}

TEST(AxialGauge, SeedFaceIsIdentity) {
  Rng rng(51);
  const auto c = random_su2_polynomial_connection(rng, square());
  const auto up = axial_gauge(c, vec(0, 1), 17, 512);
  const auto down = axial_gauge(c, vec(0, -1), 17, 512);
  for (double x : {-1.0, -0.25, 0.5, 1.0}) {
    EXPECT_LT((up.gauge.value(vec(x, -1)) - Matrix::Identity(2, 2)).norm(), 1e-14);
    EXPECT_LT((down.gauge.value(vec(x, 1)) - Matrix::Identity(2, 2)).norm(), 1e-14);
  }
}

TEST(AxialGauge, AbelianResidualOn64Grid) {
  const auto c = constant_field_connection(0.5, square());
  EXPECT_LE(axial_gauge(c, vec(0, 1), 64).residual, 1e-5);
}

TEST(AxialGauge, SecondOrderResidualConvergence) {
  const auto c = gentle_su2();
  const double r32 = axial_gauge(c, vec(0, 1), 32).residual;
  const double r64 = axial_gauge(c, vec(0, 1), 64).residual;
  const double r128 = axial_gauge(c, vec(0, 1), 128).residual;
  EXPECT_LE(r64, 1e-5);
  EXPECT_GT(r32 / r64, 3.0);
  EXPECT_LT(r32 / r64, 5.0);
  EXPECT_GT(r64 / r128, 3.0);
  EXPECT_LT(r64 / r128, 5.0);
}

TEST(AxialGauge, ResidualBeforeAndAfter) {
  Rng rng(52);
  const auto c = random_su2_polynomial_connection(rng, square());
  const auto probes = box_probes(square(), 9);
  EXPECT_GT(axial_residual(c, vec(0, 1), probes), 0.0);
  const auto line = gauge_transform(c, axial_line_gauge(c, vec(0, 1), 1024));
  EXPECT_LE(axial_residual(line, vec(0, 1), probes), 1e-12);
  const auto axial = constant_coefficient_connection({AlgebraElement::su2(1, 0, 0), AlgebraElement::zero(GroupKind::su2())},
                                                     square());
  EXPECT_LE(axial_residual(axial, vec(0, 1), probes), 1e-12);
}

TEST(AxialGauge, LineGaugePreservesCurvatureNormAndAmplitude) {
  Rng rng(53);
  const auto c = random_su2_polynomial_connection(rng, square(), 0.5);
  const auto t = gauge_transform(c, axial_line_gauge(c, vec(0, 1), 4096));
  for (const auto& p : box_probes(Chart::box(vec(-0.8, -0.8), vec(0.8, 0.8)), 4)) {
    const double before = algebra_norm(curvature(c, p, vec(1, 0), vec(0, 1)).value);
    const double after = algebra_norm(curvature(t, p, vec(1, 0), vec(0, 1)).value);
    EXPECT_NEAR(before, after, 1e-6);
  }
  const auto loop = Path::circle(vec(0.1, 0.1), 0.6);
  EXPECT_NEAR(amplitude(c, loop).value, amplitude(t, loop).value, 1e-6);
}

TEST(AxialGauge, ObliqueDirection) {
  Rng rng(54);
  const auto c = random_su2_polynomial_connection(rng, square(), 0.5);
  const Vector v = vec(0.6, 0.8);
  const auto t = gauge_transform(c, axial_line_gauge(c, v, 2048));
  EXPECT_LE(axial_residual(t, v, box_probes(square(), 5)), 1e-12);
  const auto grid = axial_gauge(c, v, 33, 1024);
  EXPECT_TRUE(std::isfinite(grid.residual));
  const auto finer = axial_gauge(c, v, 65, 1024);
  EXPECT_LT(finer.residual, grid.residual);
}

TEST(AxialGauge, DirectionControlsWhichBoundaryTermVanishes) {
  Rng rng(55);
  const auto c = random_su2_polynomial_connection(rng, square());
  const Vector p = vec(0.5, 0.0);
  const auto along_x = gauge_transform(c, axial_line_gauge(c, vec(1, 0), 2048));
  const auto along_y = gauge_transform(c, axial_line_gauge(c, vec(0, 1), 2048));
  EXPECT_LE(algebra_norm(eval_form(along_x, p, vec(1, 0))), 1e-12);
  EXPECT_GT(algebra_norm(eval_form(along_y, p, vec(1, 0))), 1e-3);
}

TEST(AxialGauge, Errors) {
  const auto ball = zero_connection(GroupKind::su2(), Chart::ball(Vector::Zero(2), 1.0));
  try {
    axial_gauge(ball, vec(0, 1), 16);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ChartNotBox);
  }
  const auto box = zero_connection(GroupKind::su2(), square());
  try {
    axial_gauge(box, vec(0, 2), 16);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DirectionNotUnit);
  }
}
