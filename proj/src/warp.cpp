#include "rewarp/warp.hpp"

namespace rewarp {

Image warp_image(const Image& img, const Grid& grid) {
  Image out(grid.width, grid.height, img.channels, 0.0f, false);
  const double xmax = img.width - 1.0;
  const double ymax = img.height - 1.0;
  for (int y = 0; y < grid.height; ++y) {
    for (int x = 0; x < grid.width; ++x) {
      const Vec2 s = grid.at(x, y);
      if (!s.finite() || s.x < 0.0 || s.x > xmax || s.y < 0.0 || s.y > ymax)
        continue;
      const int x0 = static_cast<int>(std::floor(s.x));
      const int y0 = static_cast<int>(std::floor(s.y));
      const double fx = s.x - x0;
      const double fy = s.y - y0;
      const double w00 = (1.0 - fx) * (1.0 - fy);
      const double w10 = fx * (1.0 - fy);
      const double w01 = (1.0 - fx) * fy;
      const double w11 = fx * fy;

      // Weight-0 neighbors are never touched, so samples on the last
      // row/column stay in bounds and identity warps stay bit-exact.
      bool ok = true;
      const auto tap = [&](int xi, int yi, double w) -> bool {
        if (w == 0.0) return true;
        if (!img.is_valid(xi, yi)) {
          ok = false;
          return false;
        }
        return true;
      };
      tap(x0, y0, w00);
      if (ok) tap(x0 + 1, y0, w10);
      if (ok) tap(x0, y0 + 1, w01);
      if (ok) tap(x0 + 1, y0 + 1, w11);
      if (!ok) continue;

      for (int c = 0; c < img.channels; ++c) {
        double v = 0.0;
        if (w00 != 0.0) v += w00 * img.at(x0, y0, c);
        if (w10 != 0.0) v += w10 * img.at(x0 + 1, y0, c);
        if (w01 != 0.0) v += w01 * img.at(x0, y0 + 1, c);
        if (w11 != 0.0) v += w11 * img.at(x0 + 1, y0 + 1, c);
        out.at(x, y, c) = static_cast<float>(v);
      }
      out.set_valid(x, y, true);
    }
  }
  return out;
}

Canvas compute_canvas(const Image& ref, const Image& tgt,
                      const Homography& placement, const WarpField& field,
                      double area_cap) {
  const double margin = field.flow.empty() ? 0.0 : field.max_norm();
  double x0 = 0.0, y0 = 0.0;
  double x1 = ref.width - 1.0, y1 = ref.height - 1.0;
  const Vec2 corners[4] = {{0.0, 0.0},
                           {tgt.width - 1.0, 0.0},
                           {0.0, tgt.height - 1.0},
                           {tgt.width - 1.0, tgt.height - 1.0}};
  for (const Vec2 c : corners) {
    const Vec2 p = placement(c);
    if (!p.finite())
      throw UnreasonableWarp("target corner maps through the horizon");
    x0 = std::min(x0, p.x - margin);
    y0 = std::min(y0, p.y - margin);
    x1 = std::max(x1, p.x + margin);
    y1 = std::max(y1, p.y + margin);
  }
  const double ix0 = std::floor(x0);
  const double iy0 = std::floor(y0);
  const double ix1 = std::ceil(x1);
  const double iy1 = std::ceil(y1);
  const double w = ix1 - ix0 + 1.0;
  const double h = iy1 - iy0 + 1.0;
  const double max_input = std::max(static_cast<double>(ref.width) * ref.height,
                                    static_cast<double>(tgt.width) * tgt.height);
  if (w * h > area_cap * max_input)
    throw UnreasonableWarp("canvas area exceeds the configured cap");

  Canvas canvas;
  canvas.width = static_cast<int>(w);
  canvas.height = static_cast<int>(h);
  canvas.offset = Vec2(-ix0, -iy0);
  return canvas;
}

namespace {

struct RampSpec {
  bool horizontal = true;
  double start = 0.0;
  double extent = 0.0;  // 0: degenerate single-line overlap
  bool flipped = false;
};

// Linear-blend geometry: dominant axis of the overlap bbox; the target
// layer's weight grows toward the side where only the target is valid.
RampSpec make_ramp(const Canvas& canvas) {
  int bx0 = canvas.width, by0 = canvas.height, bx1 = -1, by1 = -1;
  double a_sum = 0.0, b_sum = 0.0;
  std::size_t a_cnt = 0, b_cnt = 0;
  for (int y = 0; y < canvas.height; ++y) {
    for (int x = 0; x < canvas.width; ++x) {
      const bool va = canvas.ref_layer.is_valid(x, y);
      const bool vb = canvas.tgt_layer.is_valid(x, y);
      if (va && vb) {
        bx0 = std::min(bx0, x);
        by0 = std::min(by0, y);
        bx1 = std::max(bx1, x);
        by1 = std::max(by1, y);
      }
    }
  }
  RampSpec ramp;
  if (bx1 < 0) return ramp;
  ramp.horizontal = (bx1 - bx0) >= (by1 - by0);
  ramp.start = ramp.horizontal ? bx0 : by0;
  ramp.extent = ramp.horizontal ? bx1 - bx0 : by1 - by0;
  for (int y = 0; y < canvas.height; ++y) {
    for (int x = 0; x < canvas.width; ++x) {
      const bool va = canvas.ref_layer.is_valid(x, y);
      const bool vb = canvas.tgt_layer.is_valid(x, y);
      const double pos = ramp.horizontal ? x : y;
      if (va && !vb) {
        a_sum += pos;
        ++a_cnt;
      } else if (vb && !va) {
        b_sum += pos;
        ++b_cnt;
      }
    }
  }
  if (a_cnt > 0 && b_cnt > 0)
    ramp.flipped = (b_sum / b_cnt) < (a_sum / a_cnt);
  return ramp;
}

}  // namespace

Image blend(const Canvas& canvas, BlendMode mode) {
  const Image& a = canvas.ref_layer;
  const Image& b = canvas.tgt_layer;
  if (a.width != canvas.width || b.width != canvas.width ||
      a.height != canvas.height || b.height != canvas.height)
    throw Error("blend: layer dimensions do not match the canvas");
  if (a.channels != b.channels) throw Error("blend: channel count mismatch");

  RampSpec ramp;
  if (mode == BlendMode::linear) ramp = make_ramp(canvas);

  Image out(canvas.width, canvas.height, a.channels, 0.0f, false);
  for (int y = 0; y < canvas.height; ++y) {
    for (int x = 0; x < canvas.width; ++x) {
      const bool va = a.is_valid(x, y);
      const bool vb = b.is_valid(x, y);
      if (!va && !vb) continue;
      out.set_valid(x, y, true);
      if (va && vb) {
        double wb = 0.5;
        if (mode == BlendMode::linear) {
          const double pos = ramp.horizontal ? x : y;
          wb = (pos - ramp.start) / ramp.extent;
          wb = std::clamp(wb, 0.0, 1.0);
          if (ramp.flipped) wb = 1.0 - wb;
          if (ramp.extent < 1.5) wb = 0.5;  // single-line overlap
        }
        for (int c = 0; c < a.channels; ++c)
          out.at(x, y, c) = static_cast<float>((1.0 - wb) * a.at(x, y, c) +
                                               wb * b.at(x, y, c));
      } else {
        const Image& src = va ? a : b;
        for (int c = 0; c < a.channels; ++c) out.at(x, y, c) = src.at(x, y, c);
      }
    }
  }
  return out;
}

}  // namespace rewarp
