#include "rewarp/homography.hpp"

namespace rewarp {

namespace {

Eigen::Matrix3d normalize_scale(Eigen::Matrix3d m) {
  const double h22 = m(2, 2);
  if (std::abs(h22) >= 1e-12) return m / h22;
  const double f = m.norm();
  if (f < 1e-300) throw SingularHomography("zero homography matrix");
  return m / f;
}

}  // namespace

Homography Homography::from_matrix(const Eigen::Matrix3d& m) {
  Homography h;
  h.m = normalize_scale(m);
  return h;
}

Homography dlt_solve(const CornerSet& base, const CornerDisplacement& disp) {
  // Standard four-correspondence system: rows
  //   [x y 1 0 0 0 -x*x' -y*x'] h = x'
  //   [0 0 0 x y 1 -x*y' -y*y'] h = y'
  Eigen::Matrix<double, 8, 8> a;
  Eigen::Matrix<double, 8, 1> b;
  for (int i = 0; i < 4; ++i) {
    const Vec2 s = base.corners[i];
    const Vec2 d = base.corners[i] + disp.deltas[i];
    if (!s.finite() || !d.finite())
      throw DegenerateCorners("non-finite corner correspondence");
    a.row(2 * i) << s.x, s.y, 1, 0, 0, 0, -s.x * d.x, -s.y * d.x;
    a.row(2 * i + 1) << 0, 0, 0, s.x, s.y, 1, -s.x * d.y, -s.y * d.y;
    b(2 * i) = d.x;
    b(2 * i + 1) = d.y;
  }

  const Eigen::JacobiSVD<Eigen::Matrix<double, 8, 8>> svd(
      a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (sv(0) <= 0.0 || sv(7) / sv(0) < 1e-10)
    throw DegenerateCorners("rank-deficient corner correspondences");
  const Eigen::Matrix<double, 8, 1> h = svd.solve(b);

  Eigen::Matrix3d m;
  m << h(0), h(1), h(2), h(3), h(4), h(5), h(6), h(7), 1.0;
  return Homography::from_matrix(m);
}

Grid apply(const Homography& h, const Grid& g) {
  Grid out(g.width, g.height);
  for (std::size_t i = 0; i < g.coords.size(); ++i)
    out.coords[i] = h(g.coords[i]);
  return out;
}

Homography invert(const Homography& h) {
  // Determinant checked on the unit-Frobenius matrix so the test is
  // insensitive to the stored scale.
  const double f = h.m.norm();
  if (f < 1e-300) throw SingularHomography("zero homography matrix");
  const Eigen::Matrix3d scaled = h.m / f;
  if (std::abs(scaled.determinant()) < 1e-12)
    throw SingularHomography("homography determinant below tolerance");
  return Homography::from_matrix(scaled.inverse().eval());
}

}  // namespace rewarp
