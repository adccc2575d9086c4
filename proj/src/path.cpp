#include "holonomy/path.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace holonomy {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_axes(const Vector& center, int a, int b) {
  const auto m = static_cast<int>(center.size());
  if (a < 0 || b < 0 || a >= m || b >= m || a == b) {
    throw Error(ErrorCode::InvalidArgument, "loop plane axes must be two distinct coordinates of the ambient space");
  }
}

class EllipseCurve final : public Curve {
 public:
  EllipseCurve(Vector center, double a, double b, int axis_a, int axis_b, std::string family)
      : center_(std::move(center)), a_(a), b_(b), axis_a_(axis_a), axis_b_(axis_b), family_(std::move(family)) {}

  int dim() const override { return static_cast<int>(center_.size()); }
  std::string family() const override { return family_; }

  Vector position(double t) const override {
    Vector p = center_;
    p[axis_a_] += a_ * std::cos(kTwoPi * t);
    p[axis_b_] += b_ * std::sin(kTwoPi * t);
    return p;
  }

  Vector velocity(double t) const override {
    Vector v = Vector::Zero(center_.size());
    v[axis_a_] = -kTwoPi * a_ * std::sin(kTwoPi * t);
    v[axis_b_] = kTwoPi * b_ * std::cos(kTwoPi * t);
    return v;
  }

 private:
  Vector center_;
  double a_;
  double b_;
  int axis_a_;
  int axis_b_;
  std::string family_;
};

class SegmentCurve final : public Curve {
 public:
  SegmentCurve(Vector from, Vector to) : from_(std::move(from)), to_(std::move(to)) {}

  int dim() const override { return static_cast<int>(from_.size()); }
  std::string family() const override { return "segment"; }
  Vector position(double t) const override { return from_ + t * (to_ - from_); }
  Vector velocity(double) const override { return to_ - from_; }

 private:
  Vector from_;
  Vector to_;
};

class FourierCurve final : public Curve {
 public:
  FourierCurve(Vector center, std::vector<Vector> cos_coeffs, std::vector<Vector> sin_coeffs)
      : center_(std::move(center)), cos_(std::move(cos_coeffs)), sin_(std::move(sin_coeffs)) {}

  int dim() const override { return static_cast<int>(center_.size()); }
  std::string family() const override { return "fourier"; }

  Vector position(double t) const override {
    Vector p = center_;
    for (std::size_t k = 0; k < cos_.size(); ++k) p += std::cos(kTwoPi * (k + 1) * t) * cos_[k];
    for (std::size_t k = 0; k < sin_.size(); ++k) p += std::sin(kTwoPi * (k + 1) * t) * sin_[k];
    return p;
  }

  Vector velocity(double t) const override {
    Vector v = Vector::Zero(center_.size());
    for (std::size_t k = 0; k < cos_.size(); ++k) {
      const double w = kTwoPi * (k + 1);
      v -= w * std::sin(w * t) * cos_[k];
    }
    for (std::size_t k = 0; k < sin_.size(); ++k) {
      const double w = kTwoPi * (k + 1);
      v += w * std::cos(w * t) * sin_[k];
    }
    return v;
  }

 private:
  Vector center_;
  std::vector<Vector> cos_;
  std::vector<Vector> sin_;
};

class SampledCurve final : public Curve {
 public:
  explicit SampledCurve(std::vector<Vector> points) : points_(std::move(points)) {
    const auto n = points_.size();
    const double h = 1.0 / static_cast<double>(n - 1);
    slopes_.resize(n);
    slopes_[0] = (points_[1] - points_[0]) / h;
    slopes_[n - 1] = (points_[n - 1] - points_[n - 2]) / h;
    for (std::size_t k = 1; k + 1 < n; ++k) slopes_[k] = (points_[k + 1] - points_[k - 1]) / (2.0 * h);
  }

  int dim() const override { return static_cast<int>(points_.front().size()); }
  std::string family() const override { return "sampled"; }

  Vector position(double t) const override {
    const auto [k, s, h] = locate(t);
    const double h00 = 2 * s * s * s - 3 * s * s + 1;
    const double h10 = s * s * s - 2 * s * s + s;
    const double h01 = -2 * s * s * s + 3 * s * s;
    const double h11 = s * s * s - s * s;
    return h00 * points_[k] + h10 * h * slopes_[k] + h01 * points_[k + 1] + h11 * h * slopes_[k + 1];
  }

  Vector velocity(double t) const override {
    const auto [k, s, h] = locate(t);
    const double d00 = 6 * s * s - 6 * s;
    const double d10 = 3 * s * s - 4 * s + 1;
    const double d01 = -6 * s * s + 6 * s;
    const double d11 = 3 * s * s - 2 * s;
    return (d00 * points_[k] + d01 * points_[k + 1]) / h + d10 * slopes_[k] + d11 * slopes_[k + 1];
  }

 private:
  struct Cell {
    std::size_t index;
    double local;
    double width;
  };

  Cell locate(double t) const {
    const auto cells = points_.size() - 1;
    const double h = 1.0 / static_cast<double>(cells);
    const double x = std::clamp(t, 0.0, 1.0) * static_cast<double>(cells);
    const auto k = std::min(static_cast<std::size_t>(x), cells - 1);
    return {k, x - static_cast<double>(k), h};
  }

  std::vector<Vector> points_;
  std::vector<Vector> slopes_;
};

class ConcatenatedCurve final : public Curve {
 public:
  ConcatenatedCurve(Path first, Path second) : first_(std::move(first)), second_(std::move(second)) {}

  int dim() const override { return first_.dim(); }
  std::string family() const override { return "(" + first_.family() + "." + second_.family() + ")"; }

  Vector position(double t) const override {
    return t <= 0.5 ? first_.position(2.0 * t) : second_.position(2.0 * t - 1.0);
  }

  // At t = 1/2 exactly the left piece is used; transport only samples
  // midpoints, so the one-sided choice never matters there.
  Vector velocity(double t) const override {
    return t <= 0.5 ? Vector(2.0 * first_.velocity(2.0 * t)) : Vector(2.0 * second_.velocity(2.0 * t - 1.0));
  }

 private:
  Path first_;
  Path second_;
};

class ReversedCurve final : public Curve {
 public:
  explicit ReversedCurve(Path base) : base_(std::move(base)) {}

  int dim() const override { return base_.dim(); }
  std::string family() const override { return "reverse(" + base_.family() + ")"; }
  Vector position(double t) const override { return base_.position(1.0 - t); }
  Vector velocity(double t) const override { return -base_.velocity(1.0 - t); }

 private:
  Path base_;
};

class ReparametrizedCurve final : public Curve {
 public:
  ReparametrizedCurve(Path base, std::function<double(double)> phi, std::function<double(double)> dphi)
      : base_(std::move(base)), phi_(std::move(phi)), dphi_(std::move(dphi)) {}

  int dim() const override { return base_.dim(); }
  std::string family() const override { return "reparametrized(" + base_.family() + ")"; }
  Vector position(double t) const override { return base_.position(phi_(t)); }
  Vector velocity(double t) const override { return dphi_(t) * base_.velocity(phi_(t)); }

 private:
  Path base_;
  std::function<double(double)> phi_;
  std::function<double(double)> dphi_;
};

}  // namespace

Path::Path(std::shared_ptr<const Curve> curve) : curve_(std::move(curve)) {
  if (!curve_) throw Error(ErrorCode::InvalidArgument, "path requires a curve");
}

Path Path::circle(Vector center, double radius, int axis_a, int axis_b) {
  check_axes(center, axis_a, axis_b);
  if (!(radius > 0)) throw Error(ErrorCode::InvalidArgument, "circle radius must be positive");
  return Path(std::make_shared<EllipseCurve>(std::move(center), radius, radius, axis_a, axis_b, "circle"));
}

Path Path::ellipse(Vector center, double a, double b, int axis_a, int axis_b) {
  check_axes(center, axis_a, axis_b);
  if (!(a > 0 && b > 0)) throw Error(ErrorCode::InvalidArgument, "ellipse semi-axes must be positive");
  return Path(std::make_shared<EllipseCurve>(std::move(center), a, b, axis_a, axis_b, "ellipse"));
}

Path Path::segment(Vector from, Vector to) {
  if (from.size() != to.size() || from.size() == 0) {
    throw Error(ErrorCode::InvalidArgument, "segment endpoints must have equal, positive dimension");
  }
  return Path(std::make_shared<SegmentCurve>(std::move(from), std::move(to)));
}

Path Path::constant(Vector point) {
  Vector copy = point;
  return Path(std::make_shared<SegmentCurve>(std::move(point), std::move(copy)));
}

Path Path::fourier_loop(Vector center, std::vector<Vector> cos_coeffs, std::vector<Vector> sin_coeffs) {
  for (const auto* coeffs : {&cos_coeffs, &sin_coeffs}) {
    for (const auto& c : *coeffs) {
      if (c.size() != center.size()) throw Error(ErrorCode::InvalidArgument, "fourier coefficient dimension");
    }
  }
  return Path(std::make_shared<FourierCurve>(std::move(center), std::move(cos_coeffs), std::move(sin_coeffs)));
}

Path Path::sampled(std::vector<Vector> points) {
  if (points.size() < 3) throw Error(ErrorCode::InvalidArgument, "sampled path needs at least 3 points");
  for (const auto& p : points) {
    if (p.size() != points.front().size() || p.size() == 0) {
      throw Error(ErrorCode::InvalidArgument, "sampled points must share a positive dimension");
    }
  }
  return Path(std::make_shared<SampledCurve>(std::move(points)));
}

bool Path::is_closed() const { return (start() - end()).norm() <= kClosedTolerance; }

Path concatenate(const Path& gamma, const Path& eta) {
  if (gamma.dim() != eta.dim()) throw Error(ErrorCode::InvalidArgument, "concatenated paths differ in dimension");
  const double gap = (gamma.end() - eta.start()).norm();
  if (gap > kEndpointTolerance) {
    throw Error(ErrorCode::EndpointMismatch, "gamma(1) and eta(0) are " + std::to_string(gap) + " apart");
  }
  return Path(std::make_shared<ConcatenatedCurve>(gamma, eta));
}

Path reverse(const Path& gamma) { return Path(std::make_shared<ReversedCurve>(gamma)); }

Path reparametrize(const Path& gamma, std::function<double(double)> phi, std::function<double(double)> dphi) {
  if (!phi || !dphi) throw Error(ErrorCode::InvalidArgument, "reparametrization needs phi and its derivative");
  return Path(std::make_shared<ReparametrizedCurve>(gamma, std::move(phi), std::move(dphi)));
}

double path_length(const Path& gamma, int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "path_length needs at least one node");
  double sum = 0.0;
  for (int k = 0; k < n; ++k) sum += gamma.velocity((k + 0.5) / n).norm();
  return sum / n;
}

}  // namespace holonomy
