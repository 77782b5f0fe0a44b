#include "rewarp/core.hpp"

#include "rewarp/homography.hpp"

namespace rewarp {

Image to_gray(const Image& img) {
  if (img.channels == 1) return img;
  Image out(img.width, img.height, 1);
  out.valid = img.valid;
  const std::size_t n = img.pixel_count();
  for (std::size_t i = 0; i < n; ++i) {
    const float* px = &img.data[i * 3];
    out.data[i] = 0.299f * px[0] + 0.587f * px[1] + 0.114f * px[2];
  }
  return out;
}

void validate(const Image& img) {
  if (img.width < 1 || img.height < 1)
    throw Error("image dimensions must be positive");
  if (img.channels != 1 && img.channels != 3)
    throw Error("image must have 1 or 3 channels");
  if (img.data.size() != img.pixel_count() * img.channels)
    throw Error("image data length mismatch");
  if (img.valid.size() != img.pixel_count())
    throw Error("validity mask length mismatch");
  for (float v : img.data)
    if (!(v >= 0.0f && v <= 1.0f))
      throw Error("image intensities must be finite and within [0,1]");
}

Grid make_uniform_grid(int width, int height) {
  if (width < 1 || height < 1)
    throw Error("uniform grid dimensions must be positive");
  Grid g(width, height);
  std::size_t k = 0;
  for (int i = 0; i < height; ++i)
    for (int j = 0; j < width; ++j)
      g.coords[k++] = Vec2(static_cast<double>(j), static_cast<double>(i));
  return g;
}

Rect OverlapMask::bounding_box() const {
  int x0 = width, y0 = height, x1 = -1, y1 = -1;
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x)
      if (at(x, y)) {
        x0 = std::min(x0, x);
        y0 = std::min(y0, y);
        x1 = std::max(x1, x);
        y1 = std::max(y1, y);
      }
  if (x1 < 0) return Rect{};
  return Rect{static_cast<double>(x0), static_cast<double>(y0),
              static_cast<double>(x1), static_cast<double>(y1)};
}

OverlapMask overlap_mask(Size ref, const Homography& placement, Size tgt) {
  const Homography inv = invert(placement);  // reference -> target
  OverlapMask mask(ref.width, ref.height);
  const double xmax = tgt.width - 1.0;
  const double ymax = tgt.height - 1.0;
  std::size_t count = 0;
  for (int y = 0; y < ref.height; ++y) {
    for (int x = 0; x < ref.width; ++x) {
      const Vec2 q = inv(Vec2(x, y));
      const bool in = q.finite() && q.x >= 0.0 && q.x <= xmax && q.y >= 0.0 &&
                      q.y <= ymax;
      if (in) {
        mask.inside[static_cast<std::size_t>(y) * ref.width + x] = 1;
        ++count;
      }
    }
  }
  mask.pixel_count = count;
  return mask;
}

}  // namespace rewarp
