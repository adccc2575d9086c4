#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "holonomy/lie.hpp"

namespace holonomy {

/// A C^1 (or piecewise C^1) curve [0, 1] -> R^m with its derivative.
class Curve {
 public:
  virtual ~Curve() = default;

  virtual int dim() const = 0;
  virtual std::string family() const = 0;
  virtual Vector position(double t) const = 0;
  virtual Vector velocity(double t) const = 0;
};

/// Closedness threshold on |gamma(0) - gamma(1)|.
inline constexpr double kClosedTolerance = 1e-12;
/// Endpoint matching threshold for concatenation.
inline constexpr double kEndpointTolerance = 1e-9;

class Path {
 public:
  explicit Path(std::shared_ptr<const Curve> curve);

  /// center + radius (cos 2 pi t e_a + sin 2 pi t e_b).
  static Path circle(Vector center, double radius, int axis_a = 0, int axis_b = 1);
  /// center + a cos 2 pi t e_a + b sin 2 pi t e_b.
  static Path ellipse(Vector center, double a, double b, int axis_a = 0, int axis_b = 1);
  static Path segment(Vector from, Vector to);
  static Path constant(Vector point);
  /// center + sum_k (cos_k cos 2 pi k t + sin_k sin 2 pi k t), k = 1, 2, ...
  static Path fourier_loop(Vector center, std::vector<Vector> cos_coeffs, std::vector<Vector> sin_coeffs);
  /// Uniformly spaced samples joined by cubic Hermite pieces whose node
  /// derivatives are centered differences (one-sided at the two ends).
  static Path sampled(std::vector<Vector> points);

  int dim() const { return curve_->dim(); }
  std::string family() const { return curve_->family(); }
  Vector position(double t) const { return curve_->position(t); }
  Vector velocity(double t) const { return curve_->velocity(t); }
  Vector start() const { return position(0.0); }
  Vector end() const { return position(1.0); }
  bool is_closed() const;

 private:
  std::shared_ptr<const Curve> curve_;
};

/// gamma . eta: gamma on [0, 1/2], eta on [1/2, 1]. Throws EndpointMismatch.
Path concatenate(const Path& gamma, const Path& eta);
/// t -> gamma(1 - t).
Path reverse(const Path& gamma);
/// t -> gamma(phi(t)) for an orientation-preserving phi with phi(0) = 0, phi(1) = 1.
Path reparametrize(const Path& gamma, std::function<double(double)> phi, std::function<double(double)> dphi);

/// Midpoint quadrature of |gamma'| with n nodes.
double path_length(const Path& gamma, int n = 4096);

}  // namespace holonomy
