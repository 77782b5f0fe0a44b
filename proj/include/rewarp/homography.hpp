#pragma once

#include <array>

#include <Eigen/Dense>

#include "rewarp/core.hpp"

namespace rewarp {

// Four corner coordinates in the order (0,0), (w,0), (0,h), (w,h).
struct CornerSet {
  std::array<Vec2, 4> corners{};

  static CornerSet of_size(double w, double h) {
    CornerSet c;
    c.corners = {Vec2{0, 0}, Vec2{w, 0}, Vec2{0, h}, Vec2{w, h}};
    return c;
  }
};

// Per-corner displacement vectors in pixel units.
struct CornerDisplacement {
  std::array<Vec2, 4> deltas{};

  CornerDisplacement& operator+=(const CornerDisplacement& o) {
    for (int i = 0; i < 4; ++i) deltas[i] += o.deltas[i];
    return *this;
  }
  CornerDisplacement operator*(double s) const {
    CornerDisplacement r;
    for (int i = 0; i < 4; ++i) r.deltas[i] = deltas[i] * s;
    return r;
  }
  double max_norm() const {
    double m = 0.0;
    for (const auto& d : deltas) m = std::max(m, d.norm());
    return m;
  }
  double total_norm() const {
    double s = 0.0;
    for (const auto& d : deltas) s += d.norm();
    return s;
  }
};

// 3x3 projective transform, normalized so m(2,2)=1 when representable
// (unit Frobenius norm otherwise).
struct Homography {
  Eigen::Matrix3d m = Eigen::Matrix3d::Identity();

  static Homography identity() { return Homography{}; }
  static Homography translation(double tx, double ty) {
    Homography h;
    h.m(0, 2) = tx;
    h.m(1, 2) = ty;
    return h;
  }
  static Homography from_matrix(const Eigen::Matrix3d& m);

  // Perspective-divided application; returns NaN coords when the
  // homogeneous denominator magnitude falls below 1e-12.
  Vec2 operator()(Vec2 p) const {
    const double w = m(2, 0) * p.x + m(2, 1) * p.y + m(2, 2);
    if (std::abs(w) < 1e-12) {
      const double nan = std::numeric_limits<double>::quiet_NaN();
      return {nan, nan};
    }
    return {(m(0, 0) * p.x + m(0, 1) * p.y + m(0, 2)) / w,
            (m(1, 0) * p.x + m(1, 1) * p.y + m(1, 2)) / w};
  }
};

// Exact four-correspondence DLT: the returned homography maps each base
// corner to base+delta. Throws DegenerateCorners when the 8x8 system has
// reciprocal condition number below 1e-10.
Homography dlt_solve(const CornerSet& base, const CornerDisplacement& disp);

// Per-point perspective application over a grid; points with tiny
// homogeneous denominator come out non-finite and are skipped downstream.
Grid apply(const Homography& h, const Grid& g);

// Throws SingularHomography when the (scale-normalized) determinant
// magnitude is below 1e-12.
Homography invert(const Homography& h);

}  // namespace rewarp
