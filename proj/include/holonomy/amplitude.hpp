#pragma once

#include <string>

#include "holonomy/connection.hpp"
#include "holonomy/path.hpp"
#include "holonomy/report.hpp"
#include "holonomy/transport.hpp"

namespace holonomy {

enum class AmplitudeMethod { GeodesicLog, WindingLift };

std::string to_string(AmplitudeMethod method);

struct AmplitudeValue {
  double value = 0.0;
  AmplitudeMethod method = AmplitudeMethod::GeodesicLog;
  std::string loop;
};

/// Tolerances of the amplitude identities: quadrature-limited abelian checks
/// and integrator-limited nonabelian ones.
inline constexpr double kAbelianTolerance = 1e-7;
inline constexpr double kNonabelianTolerance = 1e-6;

/// Holonomy amplitude of a transported loop.
///
/// U(1) uses the winding lift: the principal arguments of consecutive
/// sample ratios Pt(t_{k+1}) Pt(t_k)^-1 are summed, which follows the path in
/// the universal cover R instead of reducing the holonomy mod 2 pi. The lift
/// is only valid while every step rotates by less than pi; coarser
/// discretizations raise NumericalBreakdown.
///
/// Other groups use the geodesic distance from the identity to Pt(1). For
/// SU(2) this is exact since the group is simply connected; for SO(n) it is
/// the distance in SO(n) itself. An SU(2) holonomy equal to -id raises
/// CutLocusError carrying the common value pi * sqrt(2).
AmplitudeValue amplitude_of(const TransportResult& transport, GroupKind kind, std::string loop = {});

/// Throws PathNotClosed.
AmplitudeValue amplitude(const Connection& conn, const Path& gamma, int steps = kDefaultSteps);

/// |sum_k omega(gamma(t_mid))[gamma'(t_mid)] dt| for U(1) connections.
/// Throws WrongGroup and PathNotClosed.
double abelian_amplitude_integral(const Connection& conn, const Path& gamma, int steps = kDefaultSteps);

// The checks below evaluate composite loops with the step count scaled so that
// every piece is resolved with at least `steps` steps on its own parameter
// interval, and breakpoints fall on step boundaries.

/// ampl(gamma . eta) <= ampl(gamma) + ampl(eta) for loops with gamma(1) = eta(0).
VerificationReport check_subadditivity(const Connection& conn, const Path& gamma, const Path& eta,
                                       int steps = kDefaultSteps);

/// ampl(reverse(eta) . gamma . eta) = ampl(gamma) for a loop gamma and a
/// path eta leaving its base point.
VerificationReport check_conjugation_invariance(const Connection& conn, const Path& gamma, const Path& eta,
                                                int steps = kDefaultSteps);

/// ampl under conn equals ampl under gauge_transform(conn, gauge).
VerificationReport check_gauge_invariance(const Connection& conn, const GaugeField& gauge, const Path& gamma,
                                          int steps = kDefaultSteps);

}  // namespace holonomy
