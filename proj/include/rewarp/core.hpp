#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace rewarp {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class SingularHomography : public Error {
public:
  using Error::Error;
};
class DegenerateCorners : public Error {
public:
  using Error::Error;
};
class DuplicateControlPoints : public Error {
public:
  using Error::Error;
};
class SingularL : public Error {
public:
  using Error::Error;
};
class ImageTooSmall : public Error {
public:
  using Error::Error;
};
class EmptyMask : public Error {
public:
  using Error::Error;
};
class NoOverlap : public Error {
public:
  using Error::Error;
};
class UnreasonableWarp : public Error {
public:
  using Error::Error;
};
class IoError : public Error {
public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Geometry primitives
// ---------------------------------------------------------------------------

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2() = default;
  Vec2(double x_, double y_) : x(x_), y(y_) {}

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2& operator+=(Vec2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  Vec2& operator-=(Vec2 o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  double norm2() const { return x * x + y * y; }
  double norm() const { return std::sqrt(norm2()); }
  bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }

struct Size {
  int width = 0;
  int height = 0;
};

// Axis-aligned box in pixel units.
struct Rect {
  double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  bool contains(Vec2 p) const {
    return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1;
  }
};

// ---------------------------------------------------------------------------
// Image
// ---------------------------------------------------------------------------

// 2D raster, row-major, channel-interleaved intensities in [0,1] with a
// per-pixel validity mask. Pixel centers sit at integer coordinates,
// x rightward, y downward.
struct Image {
  int width = 0;
  int height = 0;
  int channels = 1;
  std::vector<float> data;
  std::vector<std::uint8_t> valid;

  Image() = default;
  Image(int w, int h, int c, float fill = 0.0f, bool valid_fill = true)
      : width(w), height(h), channels(c),
        data(static_cast<std::size_t>(w) * h * c, fill),
        valid(static_cast<std::size_t>(w) * h, valid_fill ? 1 : 0) {}

  std::size_t pixel_count() const {
    return static_cast<std::size_t>(width) * height;
  }
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * width + x;
  }
  float at(int x, int y, int c = 0) const {
    return data[index(x, y) * channels + c];
  }
  float& at(int x, int y, int c = 0) {
    return data[index(x, y) * channels + c];
  }
  bool is_valid(int x, int y) const { return valid[index(x, y)] != 0; }
  void set_valid(int x, int y, bool v) { valid[index(x, y)] = v ? 1 : 0; }
  bool in_bounds(int x, int y) const {
    return x >= 0 && x < width && y >= 0 && y < height;
  }
  Size size() const { return {width, height}; }
};

// Luma conversion (0.299/0.587/0.114); grayscale images pass through.
Image to_gray(const Image& img);

// Checks the Image invariants (dimensions, finiteness, range). Throws Error.
void validate(const Image& img);

// ---------------------------------------------------------------------------
// Grid
// ---------------------------------------------------------------------------

// A lattice of (x, y) sample positions in pixel units.
struct Grid {
  int width = 0;
  int height = 0;
  std::vector<Vec2> coords;

  Grid() = default;
  Grid(int w, int h)
      : width(w), height(h), coords(static_cast<std::size_t>(w) * h) {}

  Vec2 at(int x, int y) const {
    return coords[static_cast<std::size_t>(y) * width + x];
  }
  Vec2& at(int x, int y) {
    return coords[static_cast<std::size_t>(y) * width + x];
  }
};

// The uniform grid U: coords (j, i) for column j, row i.
Grid make_uniform_grid(int width, int height);

// ---------------------------------------------------------------------------
// OverlapMask
// ---------------------------------------------------------------------------

struct OverlapMask {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> inside;
  std::size_t pixel_count = 0;

  OverlapMask() = default;
  OverlapMask(int w, int h)
      : width(w), height(h), inside(static_cast<std::size_t>(w) * h, 0) {}

  bool at(int x, int y) const {
    return inside[static_cast<std::size_t>(y) * width + x] != 0;
  }
  void set(int x, int y, bool v) {
    inside[static_cast<std::size_t>(y) * width + x] = v ? 1 : 0;
  }
  void recount() {
    pixel_count = 0;
    for (auto v : inside) pixel_count += (v != 0);
  }
  double ratio() const {
    return inside.empty() ? 0.0
                          : static_cast<double>(pixel_count) /
                                (static_cast<double>(width) * height);
  }
  // Tight bounding box of the true region; empty Rect if no pixel set.
  Rect bounding_box() const;
};

struct Homography;

// Pixels of the reference frame whose pre-image under `placement` (the
// homography putting the target into the reference frame) lands inside the
// target's sampleable bounds [0,w-1]x[0,h-1].
OverlapMask overlap_mask(Size ref, const Homography& placement, Size tgt);

}  // namespace rewarp
