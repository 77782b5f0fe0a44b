#pragma once

#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "rewarp/core.hpp"

namespace rewarp {

// Radial basis B(z) = z^2 log(z^2), with the limit value 0 at z = 0.
double rbf(double z);
// Same kernel on a squared distance, avoiding the square root.
double rbf_r2(double r2);

// Pads interior (n-2)x(n-2) displacements with exact zeros on the edge
// ring, yielding the effective n x n displacement.
std::vector<Vec2> apply_dirichlet(const std::vector<Vec2>& raw, int n);

// n x n control points spanning `region` endpoint-inclusive, with
// displacement degrees of freedom on the interior points only.
struct ControlGrid {
  int n = 12;
  Rect region;
  std::vector<Vec2> ref_points;     // n*n, row-major
  std::vector<Vec2> interior_disp;  // (n-2)*(n-2), row-major

  static ControlGrid over_region(const Rect& region, int n = 12);

  // Effective n*n displacement: zero edges, interior_disp inside.
  std::vector<Vec2> effective_displacement() const;
  // P̂_t = P_r + effective displacement.
  std::vector<Vec2> displaced_points() const;
};

// The (M+3)x(M+3) system matrix [[K, P],[P^T, 0]] with
// K_ij = B(|P_i - P_j|) and P rows [1, x, y]. Throws
// DuplicateControlPoints when two points coincide.
Eigen::MatrixXd build_L(const std::vector<Vec2>& points);

// Spline weights for one warp: per-axis kernel weights plus affine part
// [a, b, c] (a + b*x + c*y). Carries its control point centers so it can
// evaluate itself.
struct TpsCoefficients {
  std::vector<Vec2> kernel_weights;  // per control point: (w_x, w_y)
  std::array<double, 3> affine_x{0, 1, 0};
  std::array<double, 3> affine_y{0, 0, 1};
  std::vector<Vec2> centers;  // P_r

  // spline(p): affine part + kernel sum, per axis.
  Vec2 evaluate(Vec2 p) const;
};

// Dense per-pixel displacement field over some region.
struct WarpField {
  int width = 0;
  int height = 0;
  std::vector<Vec2> flow;

  WarpField() = default;
  WarpField(int w, int h)
      : width(w), height(h), flow(static_cast<std::size_t>(w) * h) {}

  Vec2 at(int x, int y) const {
    return flow[static_cast<std::size_t>(y) * width + x];
  }
  Vec2& at(int x, int y) {
    return flow[static_cast<std::size_t>(y) * width + x];
  }
  double max_norm() const {
    double m = 0.0;
    for (const auto& f : flow) m = std::max(m, f.norm());
    return m;
  }
};

// Factors L once for a fixed control point set and solves for arbitrary
// displacement targets. Interior-point cardinal basis rows support the
// incremental evaluation used by the T-stage.
class TpsSolver {
public:
  explicit TpsSolver(std::vector<Vec2> points);

  // Coefficients interpolating points -> points + displacement (n*n
  // effective displacements, edge entries included).
  TpsCoefficients solve(const std::vector<Vec2>& displacement) const;

  // Cardinal values psi_j(p) for every control point j: the spline flow at
  // p equals sum_j psi_j(p) * D_j. Row length = point count.
  std::vector<double> cardinal_row(Vec2 p) const;

  const std::vector<Vec2>& points() const { return points_; }

private:
  std::vector<Vec2> points_;
  Eigen::MatrixXd L_;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
  Eigen::MatrixXd cardinal_;  // (M+3) x M: columns L^{-1} e_j

  Eigen::VectorXd solve_refined(const Eigen::VectorXd& rhs) const;
};

// Interpolating spline for the grid's displaced points (Dirichlet edges
// applied). Throws SingularL if the system cannot be solved.
TpsCoefficients solve_tps(const ControlGrid& grid);

// Test-only escape hatch: interpolate arbitrary targets with no boundary
// constraint (used by the affine-reproduction property).
TpsCoefficients solve_tps_unconstrained(const std::vector<Vec2>& points,
                                        const std::vector<Vec2>& targets);

// Per-sample flow = spline(p) - p over the region grid. Row-parallel
// internally; output is bit-identical for any thread count.
WarpField eval_warpfield(const TpsCoefficients& coeffs, const Grid& region);

}  // namespace rewarp
