#include "holonomy/gauge_axial.hpp"

#include <algorithm>
#include <cmath>

namespace holonomy {

namespace {

// Direction v expressed as a signed coordinate axis of some frame.
struct AxisFrame {
  Connection conn;  // connection in frame coordinates
  Chart box;        // box in frame coordinates
  int axis;
  double sign;
  std::optional<Eigen::MatrixXd> reflection;  // frame -> original coordinates (and back)
};

// omega~_q[w] = omega_{Hq}[Hw] for a symmetric orthogonal H.
class ReflectedField final : public FormField {
 public:
  ReflectedField(Connection base, Eigen::MatrixXd h) : base_(std::move(base)), h_(std::move(h)) {}

  GroupKind kind() const override { return base_.kind(); }
  int dim() const override { return base_.dim(); }
  std::string family() const override { return "reflected(" + base_.family() + ")"; }

  FormCoefficients coefficients(const Vector& q) const override {
    const auto base = base_.coefficients(h_ * q);
    const int m = dim();
    FormCoefficients out(m, Matrix::Zero(kind().matrix_dim(), kind().matrix_dim()));
    for (int k = 0; k < m; ++k) {
      for (int l = 0; l < m; ++l) out[k] += h_(l, k) * base[l];
    }
    return out;
  }

  std::optional<FormJacobian> jacobian(const Vector& q) const override {
    const auto base = base_.jacobian(h_ * q);
    const int m = dim();
    const int n = kind().matrix_dim();
    FormJacobian out(m, FormCoefficients(m, Matrix::Zero(n, n)));
    for (int j = 0; j < m; ++j) {
      for (int k = 0; k < m; ++k) {
        for (int i = 0; i < m; ++i) {
          for (int l = 0; l < m; ++l) {
            const double w = h_(i, j) * h_(l, k);
            if (w != 0.0) out[j][k] += w * base[i][l];
          }
        }
      }
    }
    return out;
  }

 private:
  Connection base_;
  Eigen::MatrixXd h_;
};

// g(p) = base(Hp).
class ReflectedGauge final : public GaugeMap {
 public:
  ReflectedGauge(GaugeField base, Eigen::MatrixXd h) : base_(std::move(base)), h_(std::move(h)) {}

  GroupKind kind() const override { return base_.kind(); }
  std::string family() const override { return base_.family(); }
  Matrix value(const Vector& p) const override { return base_.value(h_ * p); }

  std::optional<std::vector<Matrix>> differential(const Vector& p) const override {
    const auto d = base_.differential(h_ * p);
    const auto m = p.size();
    std::vector<Matrix> out(m, Matrix::Zero(kind().matrix_dim(), kind().matrix_dim()));
    for (Eigen::Index i = 0; i < m; ++i) {
      for (Eigen::Index l = 0; l < m; ++l) out[i] += h_(l, i) * d[l];
    }
    return out;
  }

 private:
  GaugeField base_;
  Eigen::MatrixXd h_;
};

AxisFrame make_frame(const Connection& conn, const Vector& v) {
  if (!conn.chart().is_box()) throw Error(ErrorCode::ChartNotBox, "axial gauge needs a box chart");
  if (v.size() != conn.dim()) throw Error(ErrorCode::InvalidArgument, "direction dimension does not match chart");
  if (std::abs(v.norm() - 1.0) > 1e-12) throw Error(ErrorCode::DirectionNotUnit, "axial direction must be a unit vector");
  const int m = conn.dim();
  for (int j = 0; j < m; ++j) {
    for (double s : {1.0, -1.0}) {
      Vector e = Vector::Zero(m);
      e[j] = s;
      if ((v - e).norm() <= 1e-12) return {conn, conn.chart(), j, s, std::nullopt};
    }
  }
  // Householder reflection exchanging e_{m-1} and v.
  Vector u = -v;
  u[m - 1] += 1.0;
  const Eigen::MatrixXd h = Eigen::MatrixXd::Identity(m, m) - 2.0 * u * u.transpose() / u.squaredNorm();
  // Bounding box of H(box).
  const Chart& box = conn.chart();
  const Vector center = h * box.center();
  const Vector half = 0.5 * (box.upper() - box.lower());
  const Vector extent = h.cwiseAbs() * half;
  Chart frame_box = Chart::box(center - extent, center + extent);
  Connection frame_conn(frame_box, std::make_shared<ReflectedField>(conn, h));
  return {frame_conn, frame_box, m - 1, 1.0, h};
}

double seed_coordinate(const AxisFrame& frame) {
  return frame.sign > 0 ? frame.box.lower()[frame.axis] : frame.box.upper()[frame.axis];
}

// Symmetrized derivative of exp at X = -dt A in direction -dt B, times exp.
Matrix step_derivative(const Matrix& step, const Matrix& db, double dt) {
  return -0.5 * dt * (db * step + step * db);
}

class LineGauge final : public GaugeMap {
 public:
  LineGauge(AxisFrame frame, int steps) : frame_(std::move(frame)), steps_(steps), seed_(seed_coordinate(frame_)) {}

  GroupKind kind() const override { return frame_.conn.kind(); }
  std::string family() const override { return "axial-line"; }

  Matrix value(const Vector& p) const override { return integrate(p, false).value; }

  std::optional<std::vector<Matrix>> differential(const Vector& p) const override {
    return integrate(p, true).differential;
  }

 private:
  struct LineSolution {
    Matrix value;
    std::vector<Matrix> differential;
  };

  LineSolution integrate(const Vector& p, bool with_differential) const {
    const int m = frame_.conn.dim();
    const int j = frame_.axis;
    const auto kind = frame_.conn.kind();
    const double length = frame_.sign * (p[j] - seed_);
    const double dt = length / steps_;
    Vector v = Vector::Zero(m);
    v[j] = frame_.sign;
    Vector start = p;
    start[j] = seed_;

    Matrix g = GroupElement::identity(kind).matrix();
    std::vector<Matrix> dg(m, Matrix::Zero(kind.matrix_dim(), kind.matrix_dim()));
    for (int k = 0; k < steps_; ++k) {
      const Vector mid = start + ((k + 0.5) * dt) * v;
      const auto coeffs = frame_.conn.coefficients(mid);
      const Matrix a = frame_.sign * coeffs[j];
      const Matrix step = exp_map(AlgebraElement::project(kind, -dt * a)).matrix();
      if (with_differential) {
        const auto jac = frame_.conn.jacobian(mid);
        for (int i = 0; i < m; ++i) {
          if (i == j) continue;
          dg[i] = step_derivative(step, frame_.sign * jac[i][j], dt) * g + step * dg[i];
        }
      }
      g = step * g;
    }
    if (with_differential) dg[j] = -frame_.conn.coefficients(p)[j] * g;
    return {g, dg};
  }

  AxisFrame frame_;
  int steps_;
  double seed_;
};

// Nodal values on a uniform grid with multilinear interpolation.
class GridGauge final : public GaugeMap {
 public:
  GridGauge(GroupKind kind, Chart box, int nodes, std::vector<Matrix> values)
      : kind_(kind), box_(std::move(box)), nodes_(nodes), values_(std::move(values)) {
    const int m = box_.dim();
    spacing_ = (box_.upper() - box_.lower()) / (nodes_ - 1);
    derivatives_.assign(m, std::vector<Matrix>(values_.size()));
    for (std::size_t flat = 0; flat < values_.size(); ++flat) {
      const auto idx = unflatten(flat);
      for (int a = 0; a < m; ++a) derivatives_[a][flat] = nodal_difference(idx, a);
    }
  }

  GroupKind kind() const override { return kind_; }
  std::string family() const override { return "axial-grid"; }

  Matrix value(const Vector& p) const override {
    return project_to_group(interpolate(values_, p), kind_).matrix();
  }

  std::optional<std::vector<Matrix>> differential(const Vector& p) const override {
    std::vector<Matrix> out;
    for (const auto& d : derivatives_) out.push_back(interpolate(d, p));
    return out;
  }

  const std::vector<Matrix>& values() const { return values_; }
  const std::vector<Matrix>& derivatives(int axis) const { return derivatives_[axis]; }
  std::vector<int> unflatten(std::size_t flat) const {
    std::vector<int> idx(box_.dim());
    for (int a = 0; a < box_.dim(); ++a) {
      idx[a] = static_cast<int>(flat % nodes_);
      flat /= nodes_;
    }
    return idx;
  }
  std::size_t flatten(const std::vector<int>& idx) const {
    std::size_t flat = 0;
    for (int a = box_.dim() - 1; a >= 0; --a) flat = flat * nodes_ + idx[a];
    return flat;
  }
  Vector node(const std::vector<int>& idx) const {
    Vector p = box_.lower();
    for (int a = 0; a < box_.dim(); ++a) p[a] += idx[a] * spacing_[a];
    return p;
  }

 private:
  // Second-order differences: centered inside, one-sided three-point at faces.
  Matrix nodal_difference(std::vector<int> idx, int axis) const {
    const int i = idx[axis];
    auto at = [&](int k) {
      idx[axis] = k;
      return values_[flatten(idx)];
    };
    const double h = spacing_[axis];
    if (i == 0) return (-3.0 * at(0) + 4.0 * at(1) - at(2)) / (2.0 * h);
    if (i == nodes_ - 1) return (3.0 * at(i) - 4.0 * at(i - 1) + at(i - 2)) / (2.0 * h);
    return (at(i + 1) - at(i - 1)) / (2.0 * h);
  }

  Matrix interpolate(const std::vector<Matrix>& field, const Vector& p) const {
    const int m = box_.dim();
    const double slack = 1e-3 * box_.scale();
    std::vector<int> base(m);
    std::vector<double> frac(m);
    for (int a = 0; a < m; ++a) {
      if (p[a] < box_.lower()[a] - slack || p[a] > box_.upper()[a] + slack) {
        throw Error(ErrorCode::OutOfChart, "grid gauge evaluated outside its box");
      }
      const double x = std::clamp((p[a] - box_.lower()[a]) / spacing_[a], 0.0, static_cast<double>(nodes_ - 1));
      base[a] = std::min(static_cast<int>(x), nodes_ - 2);
      frac[a] = x - base[a];
    }
    Matrix out = Matrix::Zero(kind_.matrix_dim(), kind_.matrix_dim());
    std::vector<int> idx(m);
    for (int corner = 0; corner < (1 << m); ++corner) {
      double w = 1.0;
      for (int a = 0; a < m; ++a) {
        const bool upper = (corner >> a) & 1;
        idx[a] = base[a] + (upper ? 1 : 0);
        w *= upper ? frac[a] : 1.0 - frac[a];
      }
      if (w != 0.0) out += w * field[flatten(idx)];
    }
    return out;
  }

  GroupKind kind_;
  Chart box_;
  int nodes_;
  Vector spacing_;
  std::vector<Matrix> values_;
  std::vector<std::vector<Matrix>> derivatives_;
};

GaugeField wrap(const AxisFrame& frame, std::shared_ptr<const GaugeMap> map) {
  GaugeField field(std::move(map));
  if (!frame.reflection) return field;
  return GaugeField(std::make_shared<ReflectedGauge>(field, *frame.reflection));
}

}  // namespace

AxialGaugeResult axial_gauge(const Connection& conn, const Vector& direction, int grid, int line_steps) {
  if (grid < 3) throw Error(ErrorCode::InvalidArgument, "axial gauge grid needs at least 3 nodes per axis");
  if (line_steps < 1) throw Error(ErrorCode::StepCountTooSmall, "axial gauge needs positive line steps");
  const AxisFrame frame = make_frame(conn, direction);
  const int m = frame.conn.dim();
  const int j = frame.axis;
  const auto kind = frame.conn.kind();
  const int cells = grid - 1;
  const int substeps = std::max(1, (line_steps + cells - 1) / cells);
  const double h = (frame.box.upper()[j] - frame.box.lower()[j]) / cells;
  const double dt = h / substeps;
  Vector v = Vector::Zero(m);
  v[j] = frame.sign;

  std::size_t total = 1;
  for (int a = 0; a < m; ++a) total *= static_cast<std::size_t>(grid);
  std::vector<Matrix> values(total);

  // Walk every line from the seed face, filling nodes as they are reached.
  std::vector<int> idx(m, 0);
  auto flatten = [&](const std::vector<int>& i) {
    std::size_t flat = 0;
    for (int a = m - 1; a >= 0; --a) flat = flat * grid + i[a];
    return flat;
  };
  const Vector spacing = (frame.box.upper() - frame.box.lower()) / cells;
  for (std::size_t line = 0; line < total / grid; ++line) {
    std::size_t rest = line;
    for (int a = 0; a < m; ++a) {
      if (a == j) continue;
      idx[a] = static_cast<int>(rest % grid);
      rest /= grid;
    }
    const int first = frame.sign > 0 ? 0 : cells;
    idx[j] = first;
    Vector p = frame.box.lower();
    for (int a = 0; a < m; ++a) p[a] += idx[a] * spacing[a];
    Matrix g = GroupElement::identity(kind).matrix();
    values[flatten(idx)] = g;
    for (int c = 0; c < cells; ++c) {
      for (int s = 0; s < substeps; ++s) {
        const Vector mid = p + (0.5 * dt) * v;
        const Matrix a = frame.conn.form(mid, v);
        g = exp_map(AlgebraElement::project(kind, -dt * a)).matrix() * g;
        p += dt * v;
      }
      idx[j] += frame.sign > 0 ? 1 : -1;
      values[flatten(idx)] = g;
    }
  }

  auto grid_map = std::make_shared<GridGauge>(kind, frame.box, grid, std::move(values));

  // Residual at the nodes: g^-1 (dg[v] + omega[v] g), dg from grid differences.
  double residual = 0.0;
  for (std::size_t flat = 0; flat < total; ++flat) {
    const auto node_idx = grid_map->unflatten(flat);
    const Vector p = grid_map->node(node_idx);
    const Matrix& g = grid_map->values()[flat];
    const Matrix dg_v = frame.sign * grid_map->derivatives(j)[flat];
    const Matrix omega_v = frame.conn.form(p, v);
    const auto transformed = AlgebraElement::project(kind, g.adjoint() * (dg_v + omega_v * g));
    residual = std::max(residual, algebra_norm(transformed));
  }

  return {wrap(frame, grid_map), direction, residual, grid, cells * substeps};
}

GaugeField axial_line_gauge(const Connection& conn, const Vector& direction, int line_steps) {
  if (line_steps < 1) throw Error(ErrorCode::StepCountTooSmall, "axial gauge needs positive line steps");
  const AxisFrame frame = make_frame(conn, direction);
  return wrap(frame, std::make_shared<LineGauge>(frame, line_steps));
}

double axial_residual(const Connection& conn, const Vector& direction, const std::vector<Vector>& probes) {
  double worst = 0.0;
  for (const auto& p : probes) worst = std::max(worst, algebra_norm(eval_form(conn, p, direction)));
  return worst;
}

std::vector<Vector> box_probes(const Chart& box, int n) {
  if (!box.is_box()) throw Error(ErrorCode::ChartNotBox, "box_probes needs a box chart");
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "box_probes needs at least 2 nodes per axis");
  const int m = box.dim();
  std::size_t total = 1;
  for (int a = 0; a < m; ++a) total *= static_cast<std::size_t>(n);
  std::vector<Vector> out;
  out.reserve(total);
  const Vector spacing = (box.upper() - box.lower()) / (n - 1);
  for (std::size_t flat = 0; flat < total; ++flat) {
    Vector p = box.lower();
    std::size_t rest = flat;
    for (int a = 0; a < m; ++a) {
      p[a] += static_cast<double>(rest % n) * spacing[a];
      rest /= n;
    }
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace holonomy
