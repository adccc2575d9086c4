#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "holonomy/random.hpp"
#include "holonomy/transport.hpp"

using namespace holonomy;

namespace {

Vector vec(double x, double y) {
  Vector v(2);
  v << x, y;
  return v;
}

Chart disk(double r = 1.0) { return Chart::ball(Vector::Zero(2), r); }

}  // namespace

TEST(Transport, ZeroConnectionGivesIdentity) {
  const auto c = zero_connection(GroupKind::su2(), disk());
  const auto r = parallel_transport(c, Path::circle(Vector::Zero(2), 0.5), 64);
  EXPECT_LT((r.final().matrix() - Matrix::Identity(2, 2)).norm(), 1e-15);
  EXPECT_EQ(r.samples.size(), 65u);
}

TEST(Transport, AbelianCircleClosedForm) {
  // g_r(1) = exp(-i B pi r^2) for omega = (B/2)(x dy - y dx) i.
  for (double b : {0.5, 1.0, 3.0}) {
    const auto c = constant_field_connection(b, disk(2.0));
    for (double r : {0.3, 1.0, 1.5}) {
      const Complex g = circle_transport(c, r, 256).final().matrix()(0, 0);
      EXPECT_LT(std::abs(g - std::exp(Complex(0, -b * std::numbers::pi * r * r))), 1e-12);
    }
  }
}

TEST(Transport, AgreesWithRK4Oracle) {
  Rng rng(31);
  for (int trial = 0; trial < 5; ++trial) {
    const auto c = random_su2_polynomial_connection(rng, disk());
    const auto loop = Path::circle(vec(0.1, 0.0), 0.6);
    const Matrix mid = parallel_transport(c, loop, 4096).final().matrix();
    const Matrix rk4 = reference_transport_rk4(c, loop, 4096).final().matrix();
    EXPECT_LT((mid - rk4).norm(), 1e-6);
  }
}

TEST(Transport, SecondOrderConvergence) {
  const auto c = constant_coefficient_connection({AlgebraElement::su2(0.5, 0.2, 0), AlgebraElement::su2(0, 0.5, 0.3)},
                                                 disk());
  const auto loop = Path::circle(Vector::Zero(2), 0.7);
  const Matrix ref = reference_transport_rk4(c, loop, 1 << 14).final().matrix();
  const double e1 = (parallel_transport(c, loop, 128).final().matrix() - ref).norm();
  const double e2 = (parallel_transport(c, loop, 256).final().matrix() - ref).norm();
  EXPECT_GT(e1 / e2, 3.5);
  EXPECT_LT(e1 / e2, 4.5);
}

TEST(Transport, DriftStaysAtRoundoff) {
  Rng rng(32);
  const auto c = random_su2_polynomial_connection(rng, disk());
  const auto r = parallel_transport(c, Path::circle(Vector::Zero(2), 0.9), 8192);
  EXPECT_LE(r.drift, 1e-12);
  for (const auto& s : r.samples) EXPECT_TRUE(is_group_member(s.matrix(), GroupKind::su2(), 1e-12));
}

TEST(Transport, ReversalInvertsTransport) {
  Rng rng(33);
  const auto c = random_su2_polynomial_connection(rng, disk());
  const auto seg = Path::segment(vec(-0.3, 0.1), vec(0.4, 0.2));
  const Matrix forward = parallel_transport(c, seg, 2048).final().matrix();
  const Matrix back = parallel_transport(c, reverse(seg), 2048).final().matrix();
  EXPECT_LT((back * forward - Matrix::Identity(2, 2)).norm(), 1e-6);
}

TEST(Transport, ConcatenationComposes) {
  Rng rng(34);
  const auto c = random_su2_polynomial_connection(rng, disk());
  const auto a = Path::segment(vec(0, 0), vec(0.5, 0));
  const auto b = Path::segment(vec(0.5, 0), vec(0.5, 0.5));
  const Matrix ab = parallel_transport(c, concatenate(a, b), 4096).final().matrix();
  const Matrix expected =
      parallel_transport(c, b, 2048).final().matrix() * parallel_transport(c, a, 2048).final().matrix();
  EXPECT_LT((ab - expected).norm(), 1e-12);
}

TEST(Transport, ReparametrizationInvariance) {
  Rng rng(35);
  const auto c = random_su2_polynomial_connection(rng, disk());
  const auto loop = Path::circle(Vector::Zero(2), 0.5);
  const auto slow = reparametrize(loop, [](double t) { return t * t; }, [](double t) { return 2 * t; });
  const Matrix a = parallel_transport(c, loop, 8192).final().matrix();
  const Matrix b = parallel_transport(c, slow, 8192).final().matrix();
  EXPECT_LT((a - b).norm(), 1e-6);
}

TEST(Transport, Errors) {
  const auto c = zero_connection(GroupKind::u1(), disk());
  try {
    parallel_transport(c, Path::circle(Vector::Zero(2), 0.5), 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::StepCountTooSmall);
  }
  try {
    parallel_transport(c, Path::circle(Vector::Zero(2), 1.5), 64);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OutOfChart);
  }
  try {
    holonomy_along(c, Path::segment(vec(0, 0), vec(0.5, 0)), 64);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PathNotClosed);
  }
  try {
    circle_transport(c, 1.0, 64);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RadiusOutOfRange);
  }
  EXPECT_THROW(concatenate(Path::segment(vec(0, 0), vec(0.5, 0)), Path::segment(vec(0, 0), vec(0.5, 0))), Error);
}

TEST(Path, LengthsAndClosure) {
  EXPECT_NEAR(path_length(Path::circle(Vector::Zero(2), 0.5)), std::numbers::pi, 1e-12);
  EXPECT_NEAR(path_length(Path::segment(vec(0, 0), vec(3, 4))), 5.0, 1e-12);
  EXPECT_TRUE(Path::ellipse(Vector::Zero(2), 1, 0.5).is_closed());
  EXPECT_FALSE(Path::segment(vec(0, 0), vec(1, 0)).is_closed());
  const auto sampled = Path::sampled({vec(0, 0), vec(1, 0), vec(2, 0), vec(3, 0)});
  EXPECT_NEAR(sampled.position(0.5)[0], 1.5, 1e-12);
}
