#include "lunerf/image.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "lunerf/errors.hpp"

namespace lunerf {

namespace {

std::uint8_t to_byte(double v) {
  const double c = std::clamp(v, 0.0, 1.0);
  return static_cast<std::uint8_t>(std::lround(c * 255.0));
}

}  // namespace

void save_ppm(const std::string& path, const ImageBuffer& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write image: " + path);
  out << "P6\n" << img.width << " " << img.height << "\n255\n";
  std::vector<std::uint8_t> row(3 * static_cast<size_t>(img.width));
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      const Vec3 c = img.pixel(x, y);
      row[3 * x] = to_byte(c.x());
      row[3 * x + 1] = to_byte(c.y());
      row[3 * x + 2] = to_byte(c.z());
    }
    out.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size()));
  }
  if (!out) throw DataError("failed writing image: " + path);
}

ImageBuffer load_ppm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read image: " + path);
  std::string magic;
  in >> magic;
  if (magic != "P6") throw DataError("unsupported image format in " + path + " (want P6)");
  int w = 0, h = 0, maxval = 0;
  in >> w >> h >> maxval;
  if (w <= 0 || h <= 0 || maxval != 255) throw DataError("bad PPM header in " + path);
  in.get();  // single whitespace after header
  ImageBuffer img(w, h);
  std::vector<std::uint8_t> row(3 * static_cast<size_t>(w));
  for (int y = 0; y < h; ++y) {
    in.read(reinterpret_cast<char*>(row.data()), static_cast<std::streamsize>(row.size()));
    if (!in) throw DataError("truncated PPM data in " + path);
    for (int x = 0; x < w; ++x) {
      img.set_pixel(x, y, Vec3(row[3 * x] / 255.0, row[3 * x + 1] / 255.0, row[3 * x + 2] / 255.0));
    }
  }
  return img;
}

void save_pfm(const std::string& path, const DepthMap& depth) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write depth map: " + path);
  out << "Pf\n" << depth.width << " " << depth.height << "\n-1.0\n";
  std::vector<float> row(static_cast<size_t>(depth.width));
  for (int y = depth.height - 1; y >= 0; --y) {  // PFM stores bottom-up
    for (int x = 0; x < depth.width; ++x) row[x] = static_cast<float>(depth.at(x, y));
    out.write(reinterpret_cast<const char*>(row.data()),
              static_cast<std::streamsize>(row.size() * sizeof(float)));
  }
  if (!out) throw DataError("failed writing depth map: " + path);
}

DepthMap load_pfm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read depth map: " + path);
  std::string magic;
  in >> magic;
  if (magic != "Pf") throw DataError("unsupported depth format in " + path + " (want Pf)");
  int w = 0, h = 0;
  double scale = 0.0;
  in >> w >> h >> scale;
  if (w <= 0 || h <= 0 || scale >= 0.0) throw DataError("bad PFM header in " + path);
  in.get();
  DepthMap depth(w, h);
  std::vector<float> row(static_cast<size_t>(w));
  for (int y = h - 1; y >= 0; --y) {
    in.read(reinterpret_cast<char*>(row.data()),
            static_cast<std::streamsize>(row.size() * sizeof(float)));
    if (!in) throw DataError("truncated PFM data in " + path);
    for (int x = 0; x < w; ++x) depth.set(x, y, row[x]);
  }
  return depth;
}

ImageBuffer rotate_half_turn(const ImageBuffer& img) {
  ImageBuffer out(img.width, img.height);
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x)
      out.set_pixel(img.width - 1 - x, img.height - 1 - y, img.pixel(x, y));
  return out;
}

ImageBuffer quantize_8bit(const ImageBuffer& img) {
  ImageBuffer out(img.width, img.height);
  for (size_t i = 0; i < img.data.size(); ++i) out.data[i] = to_byte(img.data[i]) / 255.0;
  return out;
}

double image_mse(const ImageBuffer& a, const ImageBuffer& b) {
  if (a.width != b.width || a.height != b.height) throw DataError("image_mse: size mismatch");
  double s = 0.0;
  for (size_t i = 0; i < a.data.size(); ++i) {
    const double d = a.data[i] - b.data[i];
    s += d * d;
  }
  return s / static_cast<double>(a.data.size());
}

}  // namespace lunerf
