#include "holonomy/lie.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace holonomy {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;
// Below this sine of the rotation angle (with negative cosine) the principal
// logarithm is treated as ambiguous.
constexpr double kCutLocusSine = 1e-12;

double scaled_tolerance(double tol, double magnitude) { return tol * std::max(1.0, magnitude); }

bool same_shape(const Matrix& mat, GroupKind kind) {
  return mat.rows() == kind.matrix_dim() && mat.cols() == kind.matrix_dim();
}

// sin(x)/x and (1 - cos x)/x^2 with series fallbacks near zero.
double sinc(double x) {
  if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

double one_minus_cos_over_sq(double x) {
  if (std::abs(x) < 1e-4) return 0.5 - x * x / 24.0;
  return (1.0 - std::cos(x)) / (x * x);
}

double principal_arg(Complex z) {
  double a = std::arg(z);
  return a <= -kPi ? kPi : a;
}

Eigen::Vector3d vee3(const Eigen::Matrix3d& k) { return {k(2, 1), k(0, 2), k(1, 0)}; }

Eigen::Matrix3d hat3(const Eigen::Vector3d& w) {
  Eigen::Matrix3d k;
  k << 0, -w.z(), w.y(), w.z(), 0, -w.x(), -w.y(), w.x(), 0;
  return k;
}

Matrix to_complex(const Eigen::MatrixXd& m) { return m.cast<Complex>(); }

// Rotation angles of an orthogonal matrix, one per eigenvalue (planes are
// counted twice, fixed axes contribute zero).
Eigen::VectorXd eigen_angles(const Eigen::MatrixXd& r) {
  Eigen::EigenSolver<Eigen::MatrixXd> solver(r, false);
  const auto& values = solver.eigenvalues();
  Eigen::VectorXd angles(values.size());
  for (Eigen::Index i = 0; i < values.size(); ++i) angles[i] = std::abs(principal_arg(values[i]));
  return angles;
}

bool has_antipodal_eigenvalue(const Eigen::MatrixXd& r) {
  Eigen::EigenSolver<Eigen::MatrixXd> solver(r, false);
  const auto& values = solver.eigenvalues();
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (std::abs(values[i] + 1.0) < 1e-10) return true;
  }
  return false;
}

struct Su2Angle {
  Matrix skew;  // traceless skew-Hermitian part of g
  double sine;
  double cosine;
};

Su2Angle su2_angle(const Matrix& g) {
  Matrix a = 0.5 * (g - g.adjoint());
  a -= (a.trace() / 2.0) * Matrix::Identity(2, 2);
  return {a, a.norm() / kSqrt2, 0.5 * g.trace().real()};
}

AlgebraElement log_so3(const Eigen::Matrix3d& r) {
  const Eigen::Matrix3d k = 0.5 * (r - r.transpose());
  const double s = k.norm() / kSqrt2;
  const double c = 0.5 * (r.trace() - 1.0);
  const double theta = std::atan2(s, c);
  if (c < 0 && s < kCutLocusSine) {
    throw CutLocusError("SO(3) rotation by pi has two principal logarithms", kSqrt2 * kPi);
  }
  if (c < 0 && s < 1e-3) {
    // Near a half turn the skew part loses the axis; read it off the
    // symmetric part a a^T = (S - c I) / (1 - c) instead.
    const Eigen::Matrix3d outer = (0.5 * (r + r.transpose()) - c * Eigen::Matrix3d::Identity()) / (1.0 - c);
    Eigen::Index col = 0;
    outer.diagonal().maxCoeff(&col);
    Eigen::Vector3d axis = outer.col(col) / std::sqrt(outer(col, col));
    axis.normalize();
    if (axis.dot(vee3(k)) < 0) axis = -axis;
    return AlgebraElement::so(hat3(theta * axis));
  }
  const double scale = s < 1e-300 ? 1.0 : theta / s;
  return AlgebraElement::so(scale * k);
}

}  // namespace

// ---------------------------------------------------------------- GroupKind

GroupKind GroupKind::so(int n) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "SO(n) requires n >= 2, got " + std::to_string(n));
  return GroupKind(Family::SOn, n);
}

GroupKind GroupKind::parse(std::string_view name) {
  if (name == "U1" || name == "U(1)") return u1();
  if (name == "SU2" || name == "SU(2)") return su2();
  if (name.size() > 2 && name.substr(0, 2) == "SO") {
    std::string digits(name.substr(2));
    if (!digits.empty() && digits.front() == '(' && digits.back() == ')') digits = digits.substr(1, digits.size() - 2);
    if (!digits.empty() && std::all_of(digits.begin(), digits.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
      return so(std::stoi(digits));
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown group kind '" + std::string(name) + "'");
}

std::string GroupKind::name() const {
  switch (family_) {
    case Family::U1: return "U1";
    case Family::SU2: return "SU2";
    case Family::SOn: return "SO" + std::to_string(n_);
  }
  return "?";
}

// ----------------------------------------------------------- AlgebraElement

AlgebraElement AlgebraElement::zero(GroupKind kind) {
  return AlgebraElement(kind, Matrix::Zero(kind.matrix_dim(), kind.matrix_dim()));
}

AlgebraElement AlgebraElement::from_matrix(GroupKind kind, Matrix mat) {
  if (!same_shape(mat, kind)) {
    throw Error(ErrorCode::InvalidElement, "matrix shape does not match " + kind.name());
  }
  const double tol = scaled_tolerance(kAlgebraTolerance, mat.norm());
  if ((mat + mat.adjoint()).norm() > tol) {
    throw Error(ErrorCode::InvalidElement, "matrix is not skew-Hermitian");
  }
  if (kind.family() == GroupKind::Family::SU2 && std::abs(mat.trace()) > tol) {
    throw Error(ErrorCode::InvalidElement, "su(2) element must be traceless");
  }
  if (kind.family() == GroupKind::Family::SOn && mat.imag().norm() > tol) {
    throw Error(ErrorCode::InvalidElement, "so(n) element must be real");
  }
  return AlgebraElement(kind, std::move(mat));
}

AlgebraElement AlgebraElement::project(GroupKind kind, const Matrix& mat) {
  if (!same_shape(mat, kind)) {
    throw Error(ErrorCode::InvalidElement, "matrix shape does not match " + kind.name());
  }
  Matrix skew = 0.5 * (mat - mat.adjoint());
  if (kind.family() == GroupKind::Family::SU2) {
    skew -= (skew.trace() / 2.0) * Matrix::Identity(2, 2);
  } else if (kind.family() == GroupKind::Family::SOn) {
    skew = to_complex(skew.real());
  }
  return AlgebraElement(kind, std::move(skew));
}

AlgebraElement AlgebraElement::u1(double theta) {
  Matrix m(1, 1);
  m(0, 0) = Complex(0.0, theta);
  return AlgebraElement(GroupKind::u1(), std::move(m));
}

AlgebraElement AlgebraElement::su2(double a, double b, double c) {
  Matrix m(2, 2);
  m << Complex(0, a), Complex(b, c), Complex(-b, c), Complex(0, -a);
  return AlgebraElement(GroupKind::su2(), std::move(m));
}

AlgebraElement AlgebraElement::so(const Eigen::MatrixXd& skew) {
  if (skew.rows() != skew.cols()) throw Error(ErrorCode::InvalidElement, "so(n) element must be square");
  const auto kind = GroupKind::so(static_cast<int>(skew.rows()));
  return AlgebraElement(kind, to_complex(0.5 * (skew - skew.transpose())));
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& other) const {
  return AlgebraElement(kind_, mat_ + other.mat_);
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& other) const {
  return AlgebraElement(kind_, mat_ - other.mat_);
}

AlgebraElement AlgebraElement::operator-() const { return AlgebraElement(kind_, -mat_); }

AlgebraElement AlgebraElement::operator*(double s) const { return AlgebraElement(kind_, s * mat_); }

AlgebraElement commutator(const AlgebraElement& x, const AlgebraElement& y) {
  return AlgebraElement::project(x.kind(), x.matrix() * y.matrix() - y.matrix() * x.matrix());
}

// ------------------------------------------------------------- GroupElement

GroupElement GroupElement::identity(GroupKind kind) {
  return GroupElement(kind, Matrix::Identity(kind.matrix_dim(), kind.matrix_dim()));
}

GroupElement GroupElement::from_matrix(GroupKind kind, Matrix mat) {
  if (!same_shape(mat, kind)) {
    throw Error(ErrorCode::InvalidElement, "matrix shape does not match " + kind.name());
  }
  if (!is_group_member(mat, kind)) {
    throw Error(ErrorCode::InvalidElement, "matrix is not an element of " + kind.name());
  }
  return GroupElement(kind, std::move(mat));
}

GroupElement GroupElement::u1(double angle) {
  Matrix m(1, 1);
  m(0, 0) = std::polar(1.0, angle);
  return GroupElement(GroupKind::u1(), std::move(m));
}

GroupElement GroupElement::inverse() const { return GroupElement(kind_, mat_.adjoint()); }

GroupElement GroupElement::operator*(const GroupElement& other) const {
  if (!(kind_ == other.kind_)) throw Error(ErrorCode::WrongGroup, "product of elements of different groups");
  return GroupElement(kind_, mat_ * other.mat_);
}

// ---------------------------------------------------------------- functions

double unitarity_defect(const Matrix& mat) {
  return (mat.adjoint() * mat - Matrix::Identity(mat.cols(), mat.cols())).norm();
}

bool is_group_member(const Matrix& mat, GroupKind kind, double tol) {
  if (!same_shape(mat, kind)) return false;
  if (unitarity_defect(mat) > tol) return false;
  switch (kind.family()) {
    case GroupKind::Family::U1: return true;
    case GroupKind::Family::SU2: return std::abs(mat.determinant() - 1.0) <= tol;
    case GroupKind::Family::SOn: return mat.imag().norm() <= tol && mat.real().determinant() > 0;
  }
  return false;
}

GroupElement exp_map(const AlgebraElement& x) {
  const auto kind = x.kind();
  const Matrix& m = x.matrix();
  switch (kind.family()) {
    case GroupKind::Family::U1:
      return GroupElement::u1(m(0, 0).imag());
    case GroupKind::Family::SU2: {
      // X^2 = -alpha^2 id with alpha = |X|_F / sqrt(2).
      const double alpha = m.norm() / kSqrt2;
      Matrix g = std::cos(alpha) * Matrix::Identity(2, 2) + sinc(alpha) * m;
      return GroupElement::from_matrix(kind, std::move(g));
    }
    case GroupKind::Family::SOn: {
      const Eigen::MatrixXd k = m.real();
      if (kind.matrix_dim() == 2) {
        const double theta = k(1, 0);
        Eigen::Matrix2d r;
        r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
        return GroupElement::from_matrix(kind, to_complex(r));
      }
      if (kind.matrix_dim() == 3) {
        const Eigen::Matrix3d k3 = k;
        const double theta = vee3(k3).norm();
        const Eigen::Matrix3d r =
            Eigen::Matrix3d::Identity() + sinc(theta) * k3 + one_minus_cos_over_sq(theta) * k3 * k3;
        return GroupElement::from_matrix(kind, to_complex(r));
      }
      const Eigen::MatrixXd r = k.exp();
      return GroupElement::from_matrix(kind, to_complex(r));
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unsupported group kind");
}

AlgebraElement log_map(const GroupElement& g) {
  const auto kind = g.kind();
  const Matrix& m = g.matrix();
  switch (kind.family()) {
    case GroupKind::Family::U1:
      return AlgebraElement::u1(principal_arg(m(0, 0)));
    case GroupKind::Family::SU2: {
      const auto [skew, s, c] = su2_angle(m);
      if (c < 0 && s < kCutLocusSine) {
        throw CutLocusError("SU(2) element -id has no unique principal logarithm", kSqrt2 * kPi);
      }
      const double alpha = std::atan2(s, c);
      const double scale = s < 1e-300 ? 1.0 : alpha / s;
      return AlgebraElement::project(kind, scale * skew);
    }
    case GroupKind::Family::SOn: {
      const Eigen::MatrixXd r = m.real();
      if (kind.matrix_dim() == 2) {
        const double s = r(1, 0);
        const double c = r(0, 0);
        if (c < 0 && std::abs(s) < kCutLocusSine) {
          throw CutLocusError("SO(2) half turn has two principal logarithms", kSqrt2 * kPi);
        }
        Eigen::Matrix2d k;
        const double theta = std::atan2(s, c);
        k << 0, -theta, theta, 0;
        return AlgebraElement::so(k);
      }
      if (kind.matrix_dim() == 3) return log_so3(r);
      if (has_antipodal_eigenvalue(r)) {
        throw CutLocusError("rotation with eigenvalue -1 has no unique principal logarithm",
                            distance_from_identity(g));
      }
      const Eigen::MatrixXd k = r.log();
      return AlgebraElement::so(k);
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unsupported group kind");
}

double algebra_norm(const AlgebraElement& x) { return x.matrix().norm(); }

double distance_from_identity(const GroupElement& g) {
  const Matrix& m = g.matrix();
  switch (g.kind().family()) {
    case GroupKind::Family::U1:
      return std::abs(principal_arg(m(0, 0)));
    case GroupKind::Family::SU2: {
      const auto angle = su2_angle(m);
      return kSqrt2 * std::atan2(angle.sine, angle.cosine);
    }
    case GroupKind::Family::SOn: {
      const Eigen::MatrixXd r = m.real();
      if (r.rows() == 2) return kSqrt2 * std::abs(std::atan2(r(1, 0), r(0, 0)));
      if (r.rows() == 3) {
        const double s = 0.5 * (r - r.transpose()).norm() / kSqrt2;
        return kSqrt2 * std::atan2(s, 0.5 * (r.trace() - 1.0));
      }
      return eigen_angles(r).norm();
    }
  }
  return 0.0;
}

double geodesic_distance(const GroupElement& g, const GroupElement& h) {
  if (!(g.kind() == h.kind())) throw Error(ErrorCode::WrongGroup, "distance between different groups");
  return algebra_norm(log_map(g.inverse() * h));
}

GroupElement project_to_group(const Matrix& mat, GroupKind kind) {
  if (!same_shape(mat, kind)) {
    throw Error(ErrorCode::InvalidArgument, "matrix shape does not match " + kind.name());
  }
  switch (kind.family()) {
    case GroupKind::Family::U1: {
      const double r = std::abs(mat(0, 0));
      if (!(r > 1e-300)) throw Error(ErrorCode::SingularInput, "cannot project zero onto U(1)");
      return GroupElement::u1(principal_arg(mat(0, 0)));
    }
    case GroupKind::Family::SU2: {
      Eigen::JacobiSVD<Matrix> svd(mat, Eigen::ComputeFullU | Eigen::ComputeFullV);
      const auto& sv = svd.singularValues();
      if (!(sv(1) > 1e-12 * sv(0))) throw Error(ErrorCode::SingularInput, "matrix is rank deficient");
      Matrix w = svd.matrixU() * svd.matrixV().adjoint();
      w /= std::sqrt(w.determinant());
      return GroupElement::from_matrix(kind, std::move(w));
    }
    case GroupKind::Family::SOn: {
      const Eigen::MatrixXd real = mat.real();
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(real, Eigen::ComputeFullU | Eigen::ComputeFullV);
      const auto& sv = svd.singularValues();
      const auto n = sv.size();
      if (!(sv(n - 1) > 1e-12 * sv(0))) throw Error(ErrorCode::SingularInput, "matrix is rank deficient");
      Eigen::MatrixXd u = svd.matrixU();
      if ((u * svd.matrixV().transpose()).determinant() < 0) u.col(n - 1) *= -1.0;
      return GroupElement::from_matrix(kind, to_complex(u * svd.matrixV().transpose()));
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unsupported group kind");
}

double distance_to_group(const Matrix& mat, GroupKind kind) {
  return (mat - project_to_group(mat, kind).matrix()).norm();
}

}  // namespace holonomy
