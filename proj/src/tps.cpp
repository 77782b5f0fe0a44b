#include "rewarp/tps.hpp"

#include <thread>

namespace rewarp {

double rbf(double z) { return rbf_r2(z * z); }

double rbf_r2(double r2) {
  if (r2 <= 0.0) return 0.0;
  return r2 * std::log(r2);
}

std::vector<Vec2> apply_dirichlet(const std::vector<Vec2>& raw, int n) {
  const int m = n - 2;
  if (raw.size() != static_cast<std::size_t>(m) * m)
    throw Error("interior displacement size mismatch");
  for (const auto& d : raw)
    if (!d.finite()) throw Error("non-finite interior displacement");
  std::vector<Vec2> full(static_cast<std::size_t>(n) * n, Vec2{0.0, 0.0});
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      full[static_cast<std::size_t>(i + 1) * n + (j + 1)] =
          raw[static_cast<std::size_t>(i) * m + j];
  return full;
}

ControlGrid ControlGrid::over_region(const Rect& region, int n) {
  if (n < 3) throw Error("control grid needs n >= 3");
  if (!(region.width() > 0.0) || !(region.height() > 0.0))
    throw Error("control grid region must have positive extent");
  ControlGrid g;
  g.n = n;
  g.region = region;
  g.ref_points.resize(static_cast<std::size_t>(n) * n);
  const double sx = region.width() / (n - 1);
  const double sy = region.height() / (n - 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      g.ref_points[static_cast<std::size_t>(i) * n + j] =
          Vec2(region.x0 + j * sx, region.y0 + i * sy);
  g.interior_disp.assign(static_cast<std::size_t>(n - 2) * (n - 2),
                         Vec2{0.0, 0.0});
  return g;
}

std::vector<Vec2> ControlGrid::effective_displacement() const {
  return apply_dirichlet(interior_disp, n);
}

std::vector<Vec2> ControlGrid::displaced_points() const {
  std::vector<Vec2> out = ref_points;
  const std::vector<Vec2> disp = effective_displacement();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += disp[i];
  return out;
}

Eigen::MatrixXd build_L(const std::vector<Vec2>& points) {
  const int m = static_cast<int>(points.size());
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(m + 3, m + 3);
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const double r2 = (points[i] - points[j]).norm2();
      if (r2 < 1e-18)
        throw DuplicateControlPoints("coincident control points");
      const double v = rbf_r2(r2);
      L(i, j) = v;
      L(j, i) = v;
    }
    L(i, m) = 1.0;
    L(i, m + 1) = points[i].x;
    L(i, m + 2) = points[i].y;
    L(m, i) = 1.0;
    L(m + 1, i) = points[i].x;
    L(m + 2, i) = points[i].y;
  }
  return L;
}

TpsSolver::TpsSolver(std::vector<Vec2> points) : points_(std::move(points)) {
  L_ = build_L(points_);
  const int m = static_cast<int>(points_.size());
  // Small ridge on the kernel block; kept tiny so interpolation stays exact
  // to well below 1e-6 px (the residual it induces is lambda*|w|).
  const double lambda =
      1e-12 * L_.topLeftCorner(m, m).cwiseAbs().mean();
  for (int i = 0; i < m; ++i) L_(i, i) += lambda;
  lu_.compute(L_);
  // rcond of L is dominated by the scale gap between the kernel and affine
  // blocks, so singularity is detected behaviorally: a pivotless LU or a
  // failed interpolation residual check in solve().
  const auto& lu_matrix = lu_.matrixLU();
  double min_pivot = std::numeric_limits<double>::infinity();
  double max_pivot = 0.0;
  for (int i = 0; i < lu_matrix.rows(); ++i) {
    const double p = std::abs(lu_matrix(i, i));
    min_pivot = std::min(min_pivot, p);
    max_pivot = std::max(max_pivot, p);
  }
  if (!(max_pivot > 0.0) || min_pivot / max_pivot < 1e-300)
    throw SingularL("TPS system is singular");
  cardinal_ = Eigen::MatrixXd::Zero(m + 3, m);
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(m + 3, m);
  rhs.topLeftCorner(m, m).setIdentity();
  cardinal_ = lu_.solve(rhs);
  cardinal_ += lu_.solve(rhs - L_ * cardinal_);  // one refinement pass
}

Eigen::VectorXd TpsSolver::solve_refined(const Eigen::VectorXd& rhs) const {
  Eigen::VectorXd x = lu_.solve(rhs);
  x += lu_.solve(rhs - L_ * x);
  return x;
}

TpsCoefficients TpsSolver::solve(const std::vector<Vec2>& displacement) const {
  const int m = static_cast<int>(points_.size());
  if (displacement.size() != points_.size())
    throw Error("displacement size mismatch");
  Eigen::VectorXd tx = Eigen::VectorXd::Zero(m + 3);
  Eigen::VectorXd ty = Eigen::VectorXd::Zero(m + 3);
  for (int i = 0; i < m; ++i) {
    tx(i) = points_[i].x + displacement[i].x;
    ty(i) = points_[i].y + displacement[i].y;
  }
  const Eigen::VectorXd sx = solve_refined(tx);
  const Eigen::VectorXd sy = solve_refined(ty);

  TpsCoefficients c;
  c.centers = points_;
  c.kernel_weights.resize(m);
  for (int i = 0; i < m; ++i) c.kernel_weights[i] = Vec2(sx(i), sy(i));
  c.affine_x = {sx(m), sx(m + 1), sx(m + 2)};
  c.affine_y = {sy(m), sy(m + 1), sy(m + 2)};

  // Behavioral singularity check: the solved spline must interpolate.
  double max_err = 0.0;
  for (int i = 0; i < m; ++i) {
    const Vec2 ev = c.evaluate(points_[i]);
    max_err = std::max(max_err, std::abs(ev.x - tx(i)));
    max_err = std::max(max_err, std::abs(ev.y - ty(i)));
  }
  const double scale = std::max(1.0, displacement.empty()
                                         ? 1.0
                                         : [&] {
                                             double s = 0.0;
                                             for (const auto& d : displacement)
                                               s = std::max(s, d.norm());
                                             return s;
                                           }());
  if (!(max_err <= 1e-5 * scale))
    throw SingularL("TPS solve failed to interpolate");
  return c;
}

std::vector<double> TpsSolver::cardinal_row(Vec2 p) const {
  const int m = static_cast<int>(points_.size());
  Eigen::RowVectorXd phi(m + 3);
  for (int i = 0; i < m; ++i) phi(i) = rbf_r2((p - points_[i]).norm2());
  phi(m) = 1.0;
  phi(m + 1) = p.x;
  phi(m + 2) = p.y;
  const Eigen::RowVectorXd row = phi * cardinal_;
  return std::vector<double>(row.data(), row.data() + m);
}

TpsCoefficients solve_tps(const ControlGrid& grid) {
  TpsSolver solver(grid.ref_points);
  return solver.solve(grid.effective_displacement());
}

TpsCoefficients solve_tps_unconstrained(const std::vector<Vec2>& points,
                                        const std::vector<Vec2>& targets) {
  if (points.size() != targets.size()) throw Error("target size mismatch");
  std::vector<Vec2> disp(points.size());
  for (std::size_t i = 0; i < points.size(); ++i)
    disp[i] = targets[i] - points[i];
  TpsSolver solver(points);
  return solver.solve(disp);
}

Vec2 TpsCoefficients::evaluate(Vec2 p) const {
  double x = affine_x[0] + affine_x[1] * p.x + affine_x[2] * p.y;
  double y = affine_y[0] + affine_y[1] * p.x + affine_y[2] * p.y;
  for (std::size_t m = 0; m < centers.size(); ++m) {
    const double b = rbf_r2((p - centers[m]).norm2());
    x += kernel_weights[m].x * b;
    y += kernel_weights[m].y * b;
  }
  return {x, y};
}

WarpField eval_warpfield(const TpsCoefficients& coeffs, const Grid& region) {
  WarpField field(region.width, region.height);
  const auto eval_rows = [&](int y0, int y1) {
    for (int y = y0; y < y1; ++y) {
      for (int x = 0; x < region.width; ++x) {
        const std::size_t i =
            static_cast<std::size_t>(y) * region.width + x;
        const Vec2 p = region.coords[i];
        field.flow[i] = coeffs.evaluate(p) - p;
      }
    }
  };

  const unsigned hw = std::thread::hardware_concurrency();
  const int threads =
      std::min<int>(hw ? static_cast<int>(hw) : 1, region.height);
  if (threads <= 1 || region.height < 64) {
    eval_rows(0, region.height);
    return field;
  }
  // Row partitioning only: every pixel's kernel sum runs in index order, so
  // the result is independent of the thread count.
  std::vector<std::thread> pool;
  const int chunk = (region.height + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const int y0 = t * chunk;
    const int y1 = std::min(region.height, y0 + chunk);
    if (y0 >= y1) break;
    pool.emplace_back(eval_rows, y0, y1);
  }
  for (auto& th : pool) th.join();
  return field;
}

}  // namespace rewarp
