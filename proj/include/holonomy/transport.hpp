#pragma once

#include <vector>

#include "holonomy/connection.hpp"
#include "holonomy/path.hpp"

namespace holonomy {

inline constexpr int kMinSteps = 8;
inline constexpr int kDefaultSteps = 4096;

/// Samples of t -> Pt(t) on the uniform grid t_k = k / steps.
struct TransportResult {
  std::vector<double> times;
  std::vector<GroupElement> samples;
  /// Largest |M^* M - I|_F of an iterate before any re-projection.
  double drift = 0.0;
  /// Largest algebra norm of a single step exponent.
  double max_step_angle = 0.0;
  int steps = 0;

  const GroupElement& final() const { return samples.back(); }
};

/// Solves Pt' + omega_{gamma(t)}[gamma'(t)] Pt = 0, Pt(0) = id, with the
/// exponential midpoint rule
///   Pt(t_{k+1}) = exp(-dt omega_{gamma(t_mid)}[gamma'(t_mid)]) Pt(t_k).
/// Throws StepCountTooSmall (steps < 8) and OutOfChart.
TransportResult parallel_transport(const Connection& conn, const Path& gamma, int steps = kDefaultSteps);

/// Classical RK4 in the ambient matrix space, each stored sample projected
/// back onto the group. Kept as an independent oracle for the midpoint scheme.
TransportResult reference_transport_rk4(const Connection& conn, const Path& gamma, int steps);

/// Pt_gamma(1) for a closed loop. Throws PathNotClosed.
GroupElement holonomy_along(const Connection& conn, const Path& gamma, int steps = kDefaultSteps);

/// gamma_r(t) = (r cos 2 pi t, r sin 2 pi t).
Path circle_of_radius(double r);

/// Transport g_r along gamma_r for a connection on a planar chart containing
/// B_R(0). Throws RadiusOutOfRange unless 0 < r < R.
TransportResult circle_transport(const Connection& conn, double r, int steps = kDefaultSteps);

/// Largest R with B_R(0) inside the (planar) chart.
double disk_radius(const Connection& conn);

}  // namespace holonomy
