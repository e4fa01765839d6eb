#include "ronin/image.hpp"

#include <png.h>

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <unordered_map>

#include "ronin/error.hpp"

namespace ronin {

Raster Raster::filled(int w, int h, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  Raster img;
  img.width = w;
  img.height = h;
  img.pixels.resize(static_cast<std::size_t>(w) * h * 3);
  for (std::size_t i = 0; i < img.pixels.size(); i += 3) {
    img.pixels[i] = r;
    img.pixels[i + 1] = g;
    img.pixels[i + 2] = b;
  }
  return img;
}

void Raster::fill_rect(const Rect& r, std::uint8_t cr, std::uint8_t cg, std::uint8_t cb) {
  int x0 = std::max(0, r.x), y0 = std::max(0, r.y);
  int x1 = std::min(width, r.right()), y1 = std::min(height, r.bottom());
  for (int y = y0; y < y1; ++y) {
    std::uint8_t* p = at(x0, y);
    for (int x = x0; x < x1; ++x) {
      *p++ = cr;
      *p++ = cg;
      *p++ = cb;
    }
  }
}

MaskImage MaskImage::zeros(int w, int h) {
  MaskImage m;
  m.width = w;
  m.height = h;
  m.data.assign(static_cast<std::size_t>(w) * h, 0);
  return m;
}

std::size_t MaskImage::popcount() const {
  std::size_t n = 0;
  for (std::uint8_t v : data) n += (v != 0);
  return n;
}

bool MaskImage::any() const {
  return std::any_of(data.begin(), data.end(), [](std::uint8_t v) { return v != 0; });
}

namespace {

struct PngReadState {
  const std::uint8_t* data;
  std::size_t size;
  std::size_t pos;
};

void png_mem_read(png_structp png, png_bytep out, png_size_t len) {
  auto* st = static_cast<PngReadState*>(png_get_io_ptr(png));
  if (st->pos + len > st->size) {
    png_error(png, "read past end of PNG buffer");
  }
  std::memcpy(out, st->data + st->pos, len);
  st->pos += len;
}

void png_mem_write(png_structp png, png_bytep data, png_size_t len) {
  auto* out = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
  out->insert(out->end(), data, data + len);
}

void png_mem_flush(png_structp) {}

// Decodes any PNG color type into either RGB rows (channels=3) or
// grayscale rows (channels=1).
std::vector<std::uint8_t> decode_png_rows(const std::vector<std::uint8_t>& bytes,
                                          int channels, int& w, int& h) {
  if (bytes.size() < 8 || png_sig_cmp(bytes.data(), 0, 8) != 0) {
    throw Error(ErrorCode::parse, "not a PNG stream");
  }
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    if (png) png_destroy_read_struct(&png, &info, nullptr);
    throw Error(ErrorCode::internal, "libpng init failed");
  }
  std::vector<std::uint8_t> out;
  std::vector<png_bytep> rows;
  PngReadState st{bytes.data(), bytes.size(), 0};
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw Error(ErrorCode::parse, "PNG decode failed");
  }
  png_set_read_fn(png, &st, png_mem_read);
  png_read_info(png, info);

  w = static_cast<int>(png_get_image_width(png, info));
  h = static_cast<int>(png_get_image_height(png, info));
  png_byte color = png_get_color_type(png, info);
  png_byte depth = png_get_bit_depth(png, info);

  if (depth == 16) png_set_strip_16(png);
  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  png_set_strip_alpha(png);
  if (channels == 3) {
    if (color == PNG_COLOR_TYPE_GRAY || color == PNG_COLOR_TYPE_GRAY_ALPHA) {
      png_set_gray_to_rgb(png);
    }
  } else {
    if (color == PNG_COLOR_TYPE_RGB || color == PNG_COLOR_TYPE_RGB_ALPHA ||
        color == PNG_COLOR_TYPE_PALETTE) {
      png_set_rgb_to_gray_fixed(png, 1, -1, -1);
    }
  }
  png_read_update_info(png, info);

  out.resize(static_cast<std::size_t>(w) * h * channels);
  rows.resize(h);
  for (int y = 0; y < h; ++y) {
    rows[y] = out.data() + static_cast<std::size_t>(y) * w * channels;
  }
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return out;
}

std::vector<std::uint8_t> encode_png_rows(const std::uint8_t* data, int w, int h,
                                          int channels) {
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    if (png) png_destroy_write_struct(&png, &info);
    throw Error(ErrorCode::internal, "libpng init failed");
  }
  std::vector<std::uint8_t> out;
  std::vector<png_bytep> rows(h);
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw Error(ErrorCode::internal, "PNG encode failed");
  }
  png_set_write_fn(png, &out, png_mem_write, png_mem_flush);
  png_set_IHDR(png, info, w, h, 8,
               channels == 3 ? PNG_COLOR_TYPE_RGB : PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int y = 0; y < h; ++y) {
    rows[y] = const_cast<png_bytep>(data + static_cast<std::size_t>(y) * w * channels);
  }
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return out;
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot open image file: " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

bool has_ppm_magic(const std::vector<std::uint8_t>& b) {
  return b.size() >= 2 && b[0] == 'P' && b[1] == '6';
}

// P6 header: "P6" <ws> width <ws> height <ws> maxval <single ws> data
// '#' comments allowed between tokens.
std::size_t parse_ppm_header(const std::vector<std::uint8_t>& b, int& w, int& h) {
  std::size_t i = 2;
  auto skip_ws = [&] {
    while (i < b.size()) {
      if (std::isspace(b[i])) {
        ++i;
      } else if (b[i] == '#') {
        while (i < b.size() && b[i] != '\n') ++i;
      } else {
        break;
      }
    }
  };
  auto read_int = [&]() -> long {
    skip_ws();
    long v = 0;
    bool got = false;
    while (i < b.size() && std::isdigit(b[i])) {
      v = v * 10 + (b[i] - '0');
      ++i;
      got = true;
    }
    if (!got) throw Error(ErrorCode::parse, "malformed PPM header");
    return v;
  };
  long lw = read_int(), lh = read_int(), maxval = read_int();
  if (lw < 1 || lh < 1 || maxval != 255) {
    throw Error(ErrorCode::parse, "unsupported PPM header");
  }
  ++i;  // single whitespace before binary data
  w = static_cast<int>(lw);
  h = static_cast<int>(lh);
  return i;
}

}  // namespace

Raster load_image(const std::filesystem::path& path) {
  auto bytes = read_file_bytes(path);
  if (has_ppm_magic(bytes)) {
    Raster img;
    std::size_t off = parse_ppm_header(bytes, img.width, img.height);
    std::size_t need = static_cast<std::size_t>(img.width) * img.height * 3;
    if (bytes.size() < off + need) {
      throw Error(ErrorCode::parse, "truncated PPM: " + path.string());
    }
    img.pixels.assign(bytes.begin() + off, bytes.begin() + off + need);
    return img;
  }
  try {
    return decode_png(bytes);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

void save_image(const Raster& img, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io, "cannot write image file: " + path.string());
  auto ext = path.extension().string();
  if (ext == ".ppm") {
    out << "P6\n" << img.width << " " << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.pixels.data()),
              static_cast<std::streamsize>(img.pixels.size()));
  } else {
    auto bytes = encode_png(img);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
  }
  if (!out) throw Error(ErrorCode::io, "short write: " + path.string());
}

std::pair<int, int> read_image_size(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot open image file: " + path.string());
  std::uint8_t head[64];
  in.read(reinterpret_cast<char*>(head), sizeof(head));
  auto got = static_cast<std::size_t>(in.gcount());
  static const std::uint8_t png_sig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  if (got >= 24 && std::memcmp(head, png_sig, 8) == 0) {
    // IHDR is always the first chunk: length(4) "IHDR"(4) width(4) height(4)
    if (std::memcmp(head + 12, "IHDR", 4) != 0) {
      throw Error(ErrorCode::parse, "PNG missing IHDR: " + path.string());
    }
    auto be32 = [&](int off) {
      return (std::uint32_t(head[off]) << 24) | (std::uint32_t(head[off + 1]) << 16) |
             (std::uint32_t(head[off + 2]) << 8) | std::uint32_t(head[off + 3]);
    };
    return {static_cast<int>(be32(16)), static_cast<int>(be32(20))};
  }
  if (got >= 2 && head[0] == 'P' && head[1] == '6') {
    std::vector<std::uint8_t> buf(head, head + got);
    int w = 0, h = 0;
    parse_ppm_header(buf, w, h);
    return {w, h};
  }
  throw Error(ErrorCode::parse, "unrecognized image format: " + path.string());
}

std::vector<std::uint8_t> encode_png(const Raster& img) {
  return encode_png_rows(img.pixels.data(), img.width, img.height, 3);
}

std::vector<std::uint8_t> encode_png_gray(const MaskImage& mask) {
  std::vector<std::uint8_t> gray(mask.data.size());
  for (std::size_t i = 0; i < gray.size(); ++i) gray[i] = mask.data[i] ? 255 : 0;
  return encode_png_rows(gray.data(), mask.width, mask.height, 1);
}

Raster decode_png(const std::vector<std::uint8_t>& bytes) {
  Raster img;
  img.pixels = decode_png_rows(bytes, 3, img.width, img.height);
  return img;
}

MaskImage decode_png_mask(const std::vector<std::uint8_t>& bytes) {
  MaskImage m;
  auto gray = decode_png_rows(bytes, 1, m.width, m.height);
  m.data.resize(gray.size());
  for (std::size_t i = 0; i < gray.size(); ++i) m.data[i] = gray[i] ? 1 : 0;
  return m;
}

Raster resize_bilinear(const Raster& img, int new_w, int new_h) {
  if (new_w < 1 || new_h < 1) {
    throw Error(ErrorCode::config, "resize target must be at least 1x1");
  }
  if (new_w == img.width && new_h == img.height) return img;
  Raster out;
  out.width = new_w;
  out.height = new_h;
  out.pixels.resize(static_cast<std::size_t>(new_w) * new_h * 3);
  const double sx = static_cast<double>(img.width) / new_w;
  const double sy = static_cast<double>(img.height) / new_h;
  for (int y = 0; y < new_h; ++y) {
    double fy = (y + 0.5) * sy - 0.5;
    int y0 = static_cast<int>(std::floor(fy));
    double wy = fy - y0;
    int y1 = std::min(y0 + 1, img.height - 1);
    y0 = std::clamp(y0, 0, img.height - 1);
    for (int x = 0; x < new_w; ++x) {
      double fx = (x + 0.5) * sx - 0.5;
      int x0 = static_cast<int>(std::floor(fx));
      double wx = fx - x0;
      int x1 = std::min(x0 + 1, img.width - 1);
      x0 = std::clamp(x0, 0, img.width - 1);
      const std::uint8_t* p00 = img.at(x0, y0);
      const std::uint8_t* p10 = img.at(x1, y0);
      const std::uint8_t* p01 = img.at(x0, y1);
      const std::uint8_t* p11 = img.at(x1, y1);
      std::uint8_t* dst = out.at(x, y);
      for (int c = 0; c < 3; ++c) {
        double top = p00[c] + (p10[c] - p00[c]) * wx;
        double bot = p01[c] + (p11[c] - p01[c]) * wx;
        double v = top + (bot - top) * wy;
        dst[c] = static_cast<std::uint8_t>(std::clamp(v + 0.5, 0.0, 255.0));
      }
    }
  }
  return out;
}

MaskImage resize_nearest(const MaskImage& mask, int new_w, int new_h) {
  if (new_w < 1 || new_h < 1) {
    throw Error(ErrorCode::config, "resize target must be at least 1x1");
  }
  if (new_w == mask.width && new_h == mask.height) return mask;
  MaskImage out = MaskImage::zeros(new_w, new_h);
  for (int y = 0; y < new_h; ++y) {
    int sy = std::min(static_cast<int>((y + 0.5) * mask.height / new_h), mask.height - 1);
    for (int x = 0; x < new_w; ++x) {
      int sx = std::min(static_cast<int>((x + 0.5) * mask.width / new_w), mask.width - 1);
      out.at(x, y) = mask.at(sx, sy);
    }
  }
  return out;
}

Raster crop_raster(const Raster& img, const Rect& box) {
  if (!box.within_image(img.width, img.height)) {
    throw Error(ErrorCode::internal, "crop rect out of raster bounds");
  }
  Raster out;
  out.width = box.w;
  out.height = box.h;
  out.pixels.resize(static_cast<std::size_t>(box.w) * box.h * 3);
  for (int y = 0; y < box.h; ++y) {
    std::memcpy(out.at(0, y), img.at(box.x, box.y + y), static_cast<std::size_t>(box.w) * 3);
  }
  return out;
}

RgbColor dominant_color(const Raster& img) {
  std::unordered_map<std::uint32_t, std::size_t> counts;
  counts.reserve(64);
  for (std::size_t i = 0; i < img.pixels.size(); i += 3) {
    std::uint32_t key = (std::uint32_t(img.pixels[i]) << 16) |
                        (std::uint32_t(img.pixels[i + 1]) << 8) | img.pixels[i + 2];
    ++counts[key];
  }
  std::uint32_t best = 0;
  std::size_t best_n = 0;
  for (auto [key, n] : counts) {
    if (n > best_n || (n == best_n && key < best)) {
      best = key;
      best_n = n;
    }
  }
  return RgbColor{static_cast<std::uint8_t>(best >> 16), static_cast<std::uint8_t>(best >> 8),
                  static_cast<std::uint8_t>(best)};
}

}  // namespace ronin
