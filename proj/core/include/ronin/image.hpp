#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ronin/geometry.hpp"

namespace ronin {

// Interleaved 8-bit RGB raster, row-major.
struct Raster {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // size = width * height * 3

  bool operator==(const Raster&) const = default;

  static Raster filled(int w, int h, std::uint8_t r, std::uint8_t g, std::uint8_t b);

  std::uint8_t* at(int x, int y) { return pixels.data() + 3 * (static_cast<std::size_t>(y) * width + x); }
  const std::uint8_t* at(int x, int y) const {
    return pixels.data() + 3 * (static_cast<std::size_t>(y) * width + x);
  }

  void fill_rect(const Rect& r, std::uint8_t cr, std::uint8_t cg, std::uint8_t cb);
};

// Binary mask, one byte per pixel, 0 or 1.
struct MaskImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;  // size = width * height

  bool operator==(const MaskImage&) const = default;

  static MaskImage zeros(int w, int h);

  std::uint8_t& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
  std::uint8_t at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }

  std::size_t popcount() const;
  bool any() const;
};

struct RgbColor {
  std::uint8_t r = 0, g = 0, b = 0;
  bool operator==(const RgbColor&) const = default;
  std::uint32_t packed() const {
    return (std::uint32_t(r) << 16) | (std::uint32_t(g) << 8) | b;
  }
};

// --- file I/O (PNG via libpng, plus binary PPM/PGM for quick inspection) ---

Raster load_image(const std::filesystem::path& path);
void save_image(const Raster& img, const std::filesystem::path& path);

// Reads (width, height) from the file header without decoding pixel data.
std::pair<int, int> read_image_size(const std::filesystem::path& path);

// In-memory PNG, the wire format of the out-of-process adapters.
std::vector<std::uint8_t> encode_png(const Raster& img);
std::vector<std::uint8_t> encode_png_gray(const MaskImage& mask);  // 0 -> 0, 1 -> 255
Raster decode_png(const std::vector<std::uint8_t>& bytes);
MaskImage decode_png_mask(const std::vector<std::uint8_t>& bytes);  // nonzero -> 1

// --- raster ops ---

Raster resize_bilinear(const Raster& img, int new_w, int new_h);
MaskImage resize_nearest(const MaskImage& mask, int new_w, int new_h);

// Extracts exactly `box` from the raster; box must lie within bounds.
Raster crop_raster(const Raster& img, const Rect& box);

// Mode over pixels; ties broken toward the smaller packed RGB value.
RgbColor dominant_color(const Raster& img);

}  // namespace ronin
