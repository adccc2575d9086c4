#pragma once

#include <optional>
#include <string>
#include <vector>

#include "holonomy/amplitude.hpp"
#include "holonomy/connection.hpp"
#include "holonomy/path.hpp"
#include "holonomy/report.hpp"

namespace holonomy {

/// A quadratic map sigma: B^2 -> R^m,
///   sigma(x, y) = offset + linear * (x, y) + x^2 q_xx + x y q_xy + y^2 q_yy.
/// The named constructors cover the families used by the checks.
class Surface {
 public:
  static Surface identity_disk();
  /// center + R q.
  static Surface scaled_disk(Vector center, double radius);
  /// center + (a x, b y).
  static Surface ellipse(Vector center, double a, double b);
  /// offset + linear q, with `linear` of shape m x 2.
  static Surface linear(Vector offset, Eigen::MatrixXd linear);
  static Surface quadratic(Vector offset, Eigen::MatrixXd linear, Vector q_xx, Vector q_xy, Vector q_yy);

  int dim() const { return static_cast<int>(offset_.size()); }
  const std::string& family() const { return family_; }
  Vector map(const Vector& q) const;
  /// Columns d sigma / dx and d sigma / dy.
  Eigen::MatrixXd jacobian(const Vector& q) const;
  /// t -> sigma(cos 2 pi t, sin 2 pi t).
  Path boundary_loop() const;

  const Vector& offset() const { return offset_; }
  const Eigen::MatrixXd& linear_part() const { return linear_; }
  const Vector& q_xx() const { return q_xx_; }
  const Vector& q_xy() const { return q_xy_; }
  const Vector& q_yy() const { return q_yy_; }

 private:
  Surface(std::string family, Vector offset, Eigen::MatrixXd linear, Vector q_xx, Vector q_xy, Vector q_yy);

  std::string family_;
  Vector offset_;
  Eigen::MatrixXd linear_;
  Vector q_xx_;
  Vector q_xy_;
  Vector q_yy_;
};

struct PolarGrid {
  int radial = 256;
  int angular = 256;
  std::string label() const { return std::to_string(radial) + "x" + std::to_string(angular); }
  bool operator==(const PolarGrid&) const = default;
};

inline constexpr PolarGrid kMinPolarGrid{16, 32};

/// Omega_{sigma(q)}[d_x sigma(q), d_y sigma(q)]. Throws OutOfDisk unless |q| < 1.
AlgebraElement pullback_curvature(const Connection& conn, const Surface& sigma, const Vector& q);

/// Midpoint polar quadrature of |sigma^* Omega| over the unit disk.
/// Throws InvalidArgument for grids coarser than 16 x 32.
double curvature_mass(const Connection& conn, const Surface& sigma, PolarGrid grid);

/// 1e-5 + 1e-3 * rhs.
double theorem_tolerance(double rhs);
/// 1e-4 + 10 h^2 + 100 / N^2.
double radial_tolerance(double h_r, int steps);

/// ampl(boundary loop of sigma) <= curvature_mass(sigma).
VerificationReport check_theorem(const Connection& conn, const Surface& sigma, PolarGrid grid,
                                 int steps = kDefaultSteps);

/// ampl(gamma) <= length(gamma)^2 * max |Omega| / (4 pi) for a planar loop,
/// with the maximum taken over the quadrature nodes of the given filling.
/// Throws FillingMissing when no filling is supplied.
VerificationReport check_corollary_planar(const Connection& conn, const Path& gamma,
                                          const std::optional<Surface>& filling, PolarGrid grid,
                                          int steps = kDefaultSteps);

/// Constant of the derivative-lemma tolerance C (h^2 + 1/N^2).
inline constexpr double kLemmaConstant = 10.0;

/// Radial derivative of the circle holonomy G(r) = g_r(1) against the
/// curvature integral
///   I = 2 pi r int_0^1 G g_r(t)^-1 Omega_{r e(t)}[e(t), i e(t)] g_r(t) dt,
/// with w = omega_{(r,0)}[(1,0)]. Both sign branches
///   dG/dr - s (w G - G w) = s I,   s = +1, -1
/// are evaluated; the report's lhs is the smaller residual, details hold
/// both residuals and the matched sign. Throws RadiusOutOfRange and
/// InvalidArgument (h_r > r / 10).
VerificationReport check_derivative_lemma(const Connection& conn, double r, int steps, double h_r);

/// |ampl(gamma_{r+h}) - ampl(gamma_{r-h})| / (2h) <= r int |Omega(r e)[e, i e]| dtheta.
VerificationReport check_radial_estimate(const Connection& conn, double r, double h_r, int steps,
                                         int angular_nodes = 1024);

/// One row per radius: lhs = ampl(gamma_r), rhs = mass of B_r.
std::vector<VerificationReport> sweep_radius(const Connection& conn, const std::vector<double>& radii,
                                             int steps = kDefaultSteps, PolarGrid grid = {128, 128});

}  // namespace holonomy
