#pragma once

#include "rewarp/core.hpp"
#include "rewarp/homography.hpp"
#include "rewarp/tps.hpp"

namespace rewarp {

// Backward bilinear sampling: output(p) = bilinear(img, grid(p)). Samples
// falling outside [0,w-1]x[0,h-1], non-finite, or touching invalid input
// pixels are marked invalid.
Image warp_image(const Image& img, const Grid& grid);

// Stitched-frame geometry plus the two warped layers.
struct Canvas {
  int width = 0;
  int height = 0;
  Vec2 offset;  // reference point p renders at canvas p + offset
  Image ref_layer;
  Image tgt_layer;
};

// Canvas geometry: union of the reference rectangle and the target corner
// polygon forward-warped by `placement` (target -> reference), expanded by
// the field's max magnitude. Throws UnreasonableWarp when the canvas area
// exceeds area_cap * max(ref area, tgt area). Layers are left empty.
Canvas compute_canvas(const Image& ref, const Image& tgt,
                      const Homography& placement, const WarpField& field,
                      double area_cap = 16.0);

enum class BlendMode { average, linear };

// Two-layer composition. Overlap pixels: mean of the layers (average) or a
// convex combination ramping linearly across the overlap's dominant axis
// (linear). Non-overlap pixels copy whichever layer is valid.
Image blend(const Canvas& canvas, BlendMode mode);

}  // namespace rewarp
