#include "holonomy/random.hpp"

namespace holonomy {

Vector Rng::uniform_vector(int n, double lo, double hi) {
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = uniform(lo, hi);
  return v;
}

std::uint64_t scenario_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

const std::vector<std::vector<int>>& quadratic_monomials() {
  static const std::vector<std::vector<int>> monomials = {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
  return monomials;
}

}  // namespace

Connection random_su2_polynomial_connection(Rng& rng, Chart chart, double scale) {
  if (chart.dim() != 2) throw Error(ErrorCode::InvalidArgument, "random polynomial connections are planar");
  std::vector<FormTerm> terms;
  for (int component = 0; component < 2; ++component) {
    for (const auto& powers : quadratic_monomials()) {
      const double a = rng.uniform(-scale, scale);
      const double b = rng.uniform(-scale, scale);
      const double c = rng.uniform(-scale, scale);
      terms.push_back({component, powers, AlgebraElement::su2(a, b, c)});
    }
  }
  return polynomial_connection(GroupKind::su2(), std::move(chart), std::move(terms));
}

GaugeField random_su2_gauge(Rng& rng, double scale) {
  const AlgebraElement basis[3] = {AlgebraElement::su2(1, 0, 0), AlgebraElement::su2(0, 1, 0),
                                   AlgebraElement::su2(0, 0, 1)};
  std::vector<std::pair<AlgebraElement, ScalarPolynomial>> factors;
  for (const auto& generator : basis) {
    ScalarPolynomial phase;
    for (const auto& powers : quadratic_monomials()) phase.push_back({powers, rng.uniform(-scale, scale)});
    factors.emplace_back(generator, std::move(phase));
  }
  return exp_product_gauge(std::move(factors));
}

Path random_loop(Rng& rng, const Vector& base, double size) {
  std::vector<Vector> cos_coeffs;
  std::vector<Vector> sin_coeffs;
  Vector center = base;
  for (int k = 0; k < 2; ++k) {
    cos_coeffs.push_back(rng.uniform_vector(2, -size, size));
    sin_coeffs.push_back(rng.uniform_vector(2, -size, size));
    center -= cos_coeffs.back();
  }
  return Path::fourier_loop(std::move(center), std::move(cos_coeffs), std::move(sin_coeffs));
}

}  // namespace holonomy
