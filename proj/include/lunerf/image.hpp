#pragma once

#include <string>
#include <vector>

#include "lunerf/geometry.hpp"

namespace lunerf {

// Interleaved RGB, values in [0,1].
struct ImageBuffer {
  int width = 0;
  int height = 0;
  std::vector<double> data;  // 3 * width * height

  ImageBuffer() = default;
  ImageBuffer(int w, int h) : width(w), height(h), data(3 * static_cast<size_t>(w) * h, 0.0) {}

  Vec3 pixel(int x, int y) const {
    const size_t i = 3 * (static_cast<size_t>(y) * width + x);
    return Vec3(data[i], data[i + 1], data[i + 2]);
  }
  void set_pixel(int x, int y, const Vec3& rgb) {
    const size_t i = 3 * (static_cast<size_t>(y) * width + x);
    data[i] = rgb.x();
    data[i + 1] = rgb.y();
    data[i + 2] = rgb.z();
  }
  size_t pixel_count() const { return static_cast<size_t>(width) * height; }
};

struct DepthMap {
  int width = 0;
  int height = 0;
  std::vector<double> data;  // width * height, world units

  DepthMap() = default;
  DepthMap(int w, int h) : width(w), height(h), data(static_cast<size_t>(w) * h, 0.0) {}

  double at(int x, int y) const { return data[static_cast<size_t>(y) * width + x]; }
  void set(int x, int y, double d) { data[static_cast<size_t>(y) * width + x] = d; }
};

// Binary PPM (P6, 8-bit); values are clamped and quantized on write.
void save_ppm(const std::string& path, const ImageBuffer& img);
ImageBuffer load_ppm(const std::string& path);

// PFM grayscale ("Pf"), little-endian float32, bottom-up row order.
void save_pfm(const std::string& path, const DepthMap& depth);
DepthMap load_pfm(const std::string& path);

// In-plane rotation by pi about the image center (pixel (x,y) -> (W-1-x, H-1-y)).
ImageBuffer rotate_half_turn(const ImageBuffer& img);

// Quantize to the 8-bit grid that PPM storage would produce.
ImageBuffer quantize_8bit(const ImageBuffer& img);

double image_mse(const ImageBuffer& a, const ImageBuffer& b);

}  // namespace lunerf
