#pragma once

#include <cstdint>
#include <random>

#include "holonomy/connection.hpp"
#include "holonomy/path.hpp"

namespace holonomy {

/// Seeded generator whose uniform draws are defined bit-for-bit here rather
/// than by the standard library distributions, so streams agree across
/// platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  Vector uniform_vector(int n, double lo, double hi);

 private:
  std::mt19937_64 engine_;
};

/// Seed of scenario `index` derived from a base seed (splitmix64 finalizer).
std::uint64_t scenario_seed(std::uint64_t base, std::uint64_t index);

/// Polynomial su(2) connection on a planar chart: every monomial of degree
/// <= 2 in each of the two components carries su2(a, b, c) with a, b, c drawn
/// uniformly from [-scale, scale].
Connection random_su2_polynomial_connection(Rng& rng, Chart chart, double scale = 1.0);

/// exp(phi_1 X_1) exp(phi_2 X_2) exp(phi_3 X_3) over the su(2) basis with
/// quadratic planar phases whose coefficients lie in [-scale, scale].
GaugeField random_su2_gauge(Rng& rng, double scale = 0.5);

/// Planar loop through `base` built from two Fourier modes, each coefficient
/// component in [-size, size]. It stays within 6 sqrt(2) size of `base`.
Path random_loop(Rng& rng, const Vector& base, double size);

}  // namespace holonomy
