#pragma once

#include <string>

#include "rewarp/core.hpp"

namespace rewarp {

// Loads an 8-bit PNG or binary PPM/PGM (sniffed by magic bytes); values
// scale by 1/255. Throws IoError.
Image load_image(const std::string& path);

// Writers quantize by round(v*255) and clamp; invalid pixels write black.
void save_png(const Image& img, const std::string& path);
void save_ppm(const Image& img, const std::string& path);

// Dispatches on extension (.png / .ppm / .pgm).
void save_image(const Image& img, const std::string& path);

}  // namespace rewarp
