#include "ronin/embeddings.hpp"

#include <algorithm>
#include <cmath>

#include "ronin/error.hpp"
#include "ronin/hash.hpp"

namespace ronin {

double cosine(const EmbeddingVector& u, const EmbeddingVector& v) {
  if (u.size() != v.size()) {
    throw Error(ErrorCode::internal, "cosine: dimension mismatch (" + std::to_string(u.size()) +
                                         " vs " + std::to_string(v.size()) + ")");
  }
  if (u.empty()) throw Error(ErrorCode::internal, "cosine: empty vectors");
  double dot = 0.0, nu = 0.0, nv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    nu += u[i] * u[i];
    nv += v[i] * v[i];
  }
  if (nu == 0.0 || nv == 0.0) throw Error(ErrorCode::internal, "cosine: zero vector");
  return std::clamp(dot / (std::sqrt(nu) * std::sqrt(nv)), -1.0, 1.0);
}

EmbeddingVector embed_text(VlBackend& backend, const std::string& label,
                           const PromptTemplate& scoring_template) {
  return backend.embed_text(simple_prompt(label, scoring_template));
}

RgbColor mock_fill_color(const std::string& label) {
  std::uint32_t low24 = fnv1a32(label) & 0xFFFFFFu;
  return RgbColor{static_cast<std::uint8_t>(low24 >> 16), static_cast<std::uint8_t>(low24 >> 8),
                  static_cast<std::uint8_t>(low24)};
}

namespace {

constexpr std::uint64_t kVlReferenceSeed = 0x726f6e696e2d7631ull;  // fixed rotation reference

std::uint64_t color_seed(const char* domain, RgbColor c) {
  std::uint64_t h = fnv1a64(std::string_view(domain));
  std::uint8_t rgb[3] = {c.r, c.g, c.b};
  return fnv1a64({rgb, 3}, h);
}

// Rotates unit vector v by `angle` inside the plane spanned by v and a
// fixed reference direction, so cosine(result, v) == cos(angle).
EmbeddingVector rotate_from(const EmbeddingVector& v, double angle) {
  EmbeddingVector ref = seeded_unit_vector(kVlReferenceSeed, v.size());
  double d = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) d += ref[i] * v[i];
  double norm2 = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    ref[i] -= d * v[i];
    norm2 += ref[i] * ref[i];
  }
  if (norm2 < 1e-12) {
    // reference happened to be (anti)parallel; use a different one
    ref = seeded_unit_vector(kVlReferenceSeed + 1, v.size());
    d = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) d += ref[i] * v[i];
    norm2 = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      ref[i] -= d * v[i];
      norm2 += ref[i] * ref[i];
    }
  }
  double inv = 1.0 / std::sqrt(norm2);
  double c = std::cos(angle), s = std::sin(angle);
  EmbeddingVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = c * v[i] + s * ref[i] * inv;
  return out;
}

}  // namespace

MockVlBackend::MockVlBackend(std::vector<std::string> labels, PromptTemplate scoring_template,
                             std::size_t dim, double id_angle_deg)
    : dim_(dim),
      angle_rad_(id_angle_deg * 3.14159265358979323846 / 180.0),
      scoring_template_(std::move(scoring_template)) {
  for (const auto& l : labels) register_label(l);
}

void MockVlBackend::register_label(const std::string& label) {
  color_to_label_[mock_fill_color(label).packed()] = label;
}

EmbeddingVector MockVlBackend::embed_text(const std::string& text) {
  return seeded_unit_vector(fnv1a64(text), dim_);
}

EmbeddingVector MockVlBackend::embed_image(const Raster& crop) {
  if (crop.width < 1 || crop.height < 1) {
    throw Error(ErrorCode::backend, "mock-vl: degenerate crop");
  }
  RgbColor c = dominant_color(crop);
  auto it = color_to_label_.find(c.packed());
  if (it == color_to_label_.end()) {
    return seeded_unit_vector(color_seed("vl-color:", c), dim_);
  }
  EmbeddingVector base = embed_text(simple_prompt(it->second, scoring_template_));
  return rotate_from(base, angle_rad_);
}

EmbeddingVector MockVisualBackend::embed_image(const Raster& crop) {
  if (crop.width < 1 || crop.height < 1) {
    throw Error(ErrorCode::backend, "mock-visual: degenerate crop");
  }
  return seeded_unit_vector(color_seed("visual-color:", dominant_color(crop)), dim_);
}

}  // namespace ronin
