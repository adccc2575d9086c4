#pragma once

#include <vector>

#include "holonomy/connection.hpp"

namespace holonomy {

struct AxialGaugeResult {
  /// Grid-sampled gauge, multilinearly interpolated between nodes.
  GaugeField gauge;
  Vector direction;
  /// max over grid nodes of |v _| omega'|, with dg from grid differences.
  double residual = 0.0;
  int grid = 0;
  int line_steps = 0;
};

/// Builds g with v _| (dg + omega g) = 0 by transporting along every grid line
/// parallel to v, starting from g = id on the face of the box where <v, x> is
/// smallest. `grid` is the node count per axis; each line is integrated with
/// at least `line_steps` exponential-midpoint steps. A direction that is not
/// a coordinate axis is handled in reflected coordinates in which it is one.
/// Throws ChartNotBox and DirectionNotUnit.
AxialGaugeResult axial_gauge(const Connection& conn, const Vector& direction, int grid, int line_steps = 4096);

/// The same gauge evaluated on demand at any point by transporting along its
/// own line with `line_steps` steps. Transverse derivatives come from the
/// discretized variational equation, so the transformed connection is
/// consistent with g to integrator accuracy rather than grid accuracy.
GaugeField axial_line_gauge(const Connection& conn, const Vector& direction, int line_steps = 4096);

/// max over probes of algebra_norm(omega_p[v]).
double axial_residual(const Connection& conn, const Vector& direction, const std::vector<Vector>& probes);

/// n^m uniformly spaced nodes of a box chart, corners included.
std::vector<Vector> box_probes(const Chart& box, int n);

}  // namespace holonomy
