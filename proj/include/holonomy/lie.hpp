#pragma once

#include <Eigen/Dense>

#include <complex>
#include <string>
#include <string_view>

#include "holonomy/errors.hpp"

namespace holonomy {

using Complex = std::complex<double>;
// Group and algebra elements of every kind share one complex storage type;
// SO(n) matrices simply carry zero imaginary parts.
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXd;

/// Frobenius deviation tolerated between a stored group matrix and the group.
inline constexpr double kGroupTolerance = 1e-10;
/// Tolerance on the skew-Hermitian (and traceless) constraints of the algebra.
inline constexpr double kAlgebraTolerance = 1e-12;

/// Tag for the three supported matrix groups: U(1), SU(2) and SO(n), n >= 2.
class GroupKind {
 public:
  enum class Family { U1, SU2, SOn };

  static GroupKind u1() { return GroupKind(Family::U1, 1); }
  static GroupKind su2() { return GroupKind(Family::SU2, 2); }
  static GroupKind so(int n);

  /// Accepts "U1", "SU2", "SO<n>" and "SO(<n>)".
  static GroupKind parse(std::string_view name);

  Family family() const { return family_; }
  int matrix_dim() const { return n_; }
  bool is_abelian() const { return family_ == Family::U1 || (family_ == Family::SOn && n_ == 2); }
  std::string name() const;

  bool operator==(const GroupKind&) const = default;

 private:
  GroupKind(Family family, int n) : family_(family), n_(n) {}

  Family family_;
  int n_;
};

class AlgebraElement {
 public:
  static AlgebraElement zero(GroupKind kind);
  /// Throws InvalidElement unless `mat` lies in the Lie algebra of `kind`.
  static AlgebraElement from_matrix(GroupKind kind, Matrix mat);
  /// Orthogonal projection of an ambient matrix onto the algebra
  /// (skew-Hermitian part, trace removed for SU(2), real part for SO(n)).
  static AlgebraElement project(GroupKind kind, const Matrix& mat);

  /// i*theta in u(1).
  static AlgebraElement u1(double theta);
  /// [[i a, b + i c], [-b + i c, -i a]] in su(2).
  static AlgebraElement su2(double a, double b, double c);
  /// Real skew-symmetric matrix in so(n); the input's skew part is used.
  static AlgebraElement so(const Eigen::MatrixXd& skew);

  const GroupKind& kind() const { return kind_; }
  const Matrix& matrix() const { return mat_; }

  AlgebraElement operator+(const AlgebraElement& other) const;
  AlgebraElement operator-(const AlgebraElement& other) const;
  AlgebraElement operator-() const;
  AlgebraElement operator*(double s) const;
  friend AlgebraElement operator*(double s, const AlgebraElement& x) { return x * s; }

 private:
  AlgebraElement(GroupKind kind, Matrix mat) : kind_(kind), mat_(std::move(mat)) {}

  GroupKind kind_;
  Matrix mat_;
};

/// [X, Y] = XY - YX.
AlgebraElement commutator(const AlgebraElement& x, const AlgebraElement& y);

class GroupElement {
 public:
  static GroupElement identity(GroupKind kind);
  /// Throws InvalidElement if `mat` is farther than kGroupTolerance from the
  /// group (unitarity / orthogonality, and the determinant constraint).
  static GroupElement from_matrix(GroupKind kind, Matrix mat);
  static GroupElement u1(double angle);

  const GroupKind& kind() const { return kind_; }
  const Matrix& matrix() const { return mat_; }

  GroupElement inverse() const;
  GroupElement operator*(const GroupElement& other) const;

 private:
  GroupElement(GroupKind kind, Matrix mat) : kind_(kind), mat_(std::move(mat)) {}

  GroupKind kind_;
  Matrix mat_;
};

/// Frobenius norm of M^* M - I.
double unitarity_defect(const Matrix& mat);

/// Checks the group constraints of `kind` on an ambient matrix.
bool is_group_member(const Matrix& mat, GroupKind kind, double tol = kGroupTolerance);

GroupElement exp_map(const AlgebraElement& x);

/// Principal logarithm. U(1) maps -1 to +i*pi. SU(2) at -id and SO(n) with
/// an eigenvalue -1 throw CutLocusError.
AlgebraElement log_map(const GroupElement& g);

/// Frobenius norm on the algebra; bi-invariant for all three kinds.
double algebra_norm(const AlgebraElement& x);

/// Norm of the principal logarithm, computed from rotation angles. This is
/// well defined on the cut locus as well, where it equals the common length
/// of all minimal geodesics.
double distance_from_identity(const GroupElement& g);

/// algebra_norm(log_map(g^-1 h)); throws CutLocusError like log_map.
double geodesic_distance(const GroupElement& g, const GroupElement& h);

/// Polar-factor projection onto the group. Throws SingularInput when `mat`
/// is numerically rank deficient.
GroupElement project_to_group(const Matrix& mat, GroupKind kind);

/// Frobenius distance from `mat` to its projection; values above 0.5 mean the
/// projection should not be trusted as a correction of roundoff.
double distance_to_group(const Matrix& mat, GroupKind kind);

}  // namespace holonomy
