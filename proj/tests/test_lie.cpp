#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "holonomy/lie.hpp"
#include "holonomy/random.hpp"

using namespace holonomy;

namespace {

// Truncated power series with scaling and squaring, independent of the library.
Matrix series_exp(const Matrix& x) {
  int squarings = 0;
  double norm = x.norm();
  while (norm > 0.25) {
    norm /= 2;
    ++squarings;
  }
  const Matrix y = x / std::pow(2.0, squarings);
  Matrix term = Matrix::Identity(x.rows(), x.cols());
  Matrix sum = term;
  for (int k = 1; k < 30; ++k) {
    term = term * y / static_cast<double>(k);
    sum += term;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

AlgebraElement random_element(Rng& rng, GroupKind kind, double size) {
  switch (kind.family()) {
    case GroupKind::Family::U1: return AlgebraElement::u1(rng.uniform(-size, size));
    case GroupKind::Family::SU2:
      return AlgebraElement::su2(rng.uniform(-size, size), rng.uniform(-size, size), rng.uniform(-size, size));
    case GroupKind::Family::SOn: {
      const int n = kind.matrix_dim();
      Eigen::MatrixXd m(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = rng.uniform(-size, size);
      return AlgebraElement::so(m - m.transpose());
    }
  }
  return AlgebraElement::zero(kind);
}

}  // namespace

TEST(GroupKind, ParsesNames) {
  EXPECT_EQ(GroupKind::parse("U1"), GroupKind::u1());
  EXPECT_EQ(GroupKind::parse("SU2"), GroupKind::su2());
  EXPECT_EQ(GroupKind::parse("SO3"), GroupKind::so(3));
  EXPECT_EQ(GroupKind::parse("SO(4)"), GroupKind::so(4));
  EXPECT_THROW(GroupKind::parse("SL2"), Error);
  EXPECT_TRUE(GroupKind::so(2).is_abelian());
  EXPECT_FALSE(GroupKind::su2().is_abelian());
}

TEST(Algebra, RejectsNonMembers) {
  Matrix m = Matrix::Identity(2, 2);
  try {
    AlgebraElement::from_matrix(GroupKind::su2(), m);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidElement);
  }
  Matrix traced = Matrix::Zero(2, 2);
  traced(0, 0) = Complex(0, 1);
  traced(1, 1) = Complex(0, 1);
  EXPECT_THROW(AlgebraElement::from_matrix(GroupKind::su2(), traced), Error);
}

TEST(Exp, MatchesPowerSeriesOnEveryGroup) {
  Rng rng(11);
  for (auto kind : {GroupKind::u1(), GroupKind::su2(), GroupKind::so(2), GroupKind::so(3), GroupKind::so(4)}) {
    for (int trial = 0; trial < 50; ++trial) {
      const auto x = random_element(rng, kind, 2.0);
      const Matrix expected = series_exp(x.matrix());
      EXPECT_LT((exp_map(x).matrix() - expected).norm(), 1e-12) << kind.name();
    }
  }
}

TEST(Exp, ZeroIsIdentity) {
  for (auto kind : {GroupKind::u1(), GroupKind::su2(), GroupKind::so(3)}) {
    EXPECT_LT((exp_map(AlgebraElement::zero(kind)).matrix() - GroupElement::identity(kind).matrix()).norm(), 1e-15);
  }
}

TEST(Log, InvertsExpInsideInjectivityRadius) {
  Rng rng(12);
  for (auto kind : {GroupKind::u1(), GroupKind::su2(), GroupKind::so(2), GroupKind::so(3), GroupKind::so(4)}) {
    for (int trial = 0; trial < 100; ++trial) {
      auto x = random_element(rng, kind, 1.0);
      // Keep rotation angles below pi.
      const double limit = kind.family() == GroupKind::Family::SOn ? 2.5 : 2.5 * std::sqrt(2.0);
      if (algebra_norm(x) > limit) x = x * (limit / algebra_norm(x));
      const auto back = log_map(exp_map(x));
      EXPECT_LT((back.matrix() - x.matrix()).norm(), 1e-10) << kind.name();
    }
  }
}

TEST(Log, NearPiRotationOfSO3) {
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(3, 3);
  k(0, 1) = -1;
  k(1, 0) = 1;
  const double angle = std::numbers::pi - 1e-7;
  const auto x = AlgebraElement::so(angle * k);
  const auto back = log_map(exp_map(x));
  EXPECT_LT((back.matrix() - x.matrix()).norm(), 1e-6);
}

TEST(Log, CutLocusThrowsWithDistance) {
  // -id in SU(2) and a half-turn in SO(3).
  const auto minus_id = exp_map(AlgebraElement::su2(std::numbers::pi, 0, 0));
  try {
    log_map(minus_id);
    FAIL();
  } catch (const CutLocusError& e) {
    EXPECT_NEAR(e.distance(), std::numbers::pi * std::sqrt(2.0), 1e-12);
  }
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(3, 3);
  k(0, 1) = -std::numbers::pi;
  k(1, 0) = std::numbers::pi;
  EXPECT_THROW(log_map(exp_map(AlgebraElement::so(k))), CutLocusError);
  EXPECT_NEAR(distance_from_identity(minus_id), std::numbers::pi * std::sqrt(2.0), 1e-12);
}

TEST(Log, U1MinusOneMapsToPlusPi) {
  const auto x = log_map(GroupElement::u1(std::numbers::pi));
  EXPECT_NEAR(x.matrix()(0, 0).imag(), std::numbers::pi, 1e-15);
}

TEST(Metric, BiInvariance) {
  Rng rng(13);
  for (auto kind : {GroupKind::su2(), GroupKind::so(3)}) {
    for (int trial = 0; trial < 30; ++trial) {
      const auto g = exp_map(random_element(rng, kind, 0.5));
      const auto h = exp_map(random_element(rng, kind, 0.5));
      const auto k = exp_map(random_element(rng, kind, 1.0));
      const double d = geodesic_distance(g, h);
      EXPECT_NEAR(geodesic_distance(k * g, k * h), d, 1e-10);
      EXPECT_NEAR(geodesic_distance(g * k, h * k), d, 1e-10);
    }
  }
}

TEST(Metric, DistanceFromIdentityIsNormOfGenerator) {
  Rng rng(14);
  for (int trial = 0; trial < 50; ++trial) {
    auto x = random_element(rng, GroupKind::su2(), 1.0);
    EXPECT_NEAR(distance_from_identity(exp_map(x)), algebra_norm(x), 1e-12);
  }
}

TEST(Metric, AdjointPreservesNorm) {
  Rng rng(15);
  for (int trial = 0; trial < 30; ++trial) {
    const auto x = random_element(rng, GroupKind::su2(), 1.0);
    const auto g = exp_map(random_element(rng, GroupKind::su2(), 2.0));
    const Matrix conj = g.matrix().adjoint() * x.matrix() * g.matrix();
    EXPECT_NEAR(conj.norm(), algebra_norm(x), 1e-12);
  }
}

TEST(Projection, RestoresPerturbedElements) {
  Rng rng(16);
  for (auto kind : {GroupKind::u1(), GroupKind::su2(), GroupKind::so(3)}) {
    const auto g = exp_map(random_element(rng, kind, 1.0));
    Matrix noisy = g.matrix();
    noisy(0, 0) += 1e-6;
    const auto p = project_to_group(noisy, kind);
    EXPECT_TRUE(is_group_member(p.matrix(), kind));
    EXPECT_LT((p.matrix() - g.matrix()).norm(), 2e-6);
    EXPECT_GT(distance_to_group(noisy, kind), 0.0);
  }
  EXPECT_THROW(project_to_group(Matrix::Zero(2, 2), GroupKind::su2()), Error);
}

TEST(GroupElement, FromMatrixValidates) {
  Matrix m = Matrix::Identity(2, 2) * 2.0;
  EXPECT_THROW(GroupElement::from_matrix(GroupKind::su2(), m), Error);
  Matrix reflection = Matrix::Identity(3, 3);
  reflection(2, 2) = -1;
  EXPECT_THROW(GroupElement::from_matrix(GroupKind::so(3), reflection), Error);
}

TEST(Commutator, SU2StructureConstants) {
  // [su2(1,0,0), su2(0,1,0)] = 2 su2(0,0,1).
  const auto c = commutator(AlgebraElement::su2(1, 0, 0), AlgebraElement::su2(0, 1, 0));
  EXPECT_LT((c.matrix() - AlgebraElement::su2(0, 0, 2).matrix()).norm(), 1e-15);
}
