#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ronin/image.hpp"
#include "ronin/prompting.hpp"

namespace ronin {

using EmbeddingVector = std::vector<double>;

// u.v / (|u||v|), clamped to [-1, 1] against rounding.
// Throws on dimension mismatch and on zero vectors.
double cosine(const EmbeddingVector& u, const EmbeddingVector& v);

// Vision-language encoder pair: image and text embeddings share one space.
class VlBackend {
 public:
  virtual ~VlBackend() = default;
  virtual std::string id() const = 0;
  virtual std::size_t dim() const = 0;
  virtual EmbeddingVector embed_image(const Raster& crop) = 0;
  virtual EmbeddingVector embed_text(const std::string& text) = 0;
};

// Visual-contrastive encoder; its space is unrelated to the VL space.
class VisualBackend {
 public:
  virtual ~VisualBackend() = default;
  virtual std::string id() const = 0;
  virtual std::size_t dim() const = 0;
  virtual EmbeddingVector embed_image(const Raster& crop) = 0;
};

// The three encoders of the similarity triplet plus the text template
// applied before every scoring-side text encode.
struct EncoderSet {
  std::shared_ptr<VlBackend> vl;
  std::shared_ptr<VisualBackend> visual;
  PromptTemplate scoring_template;
};

// Renders the label through the template, then encodes.
EmbeddingVector embed_text(VlBackend& backend, const std::string& label,
                           const PromptTemplate& scoring_template);

// --- deterministic mocks ---
//
//on the text side, the mock encodes any string as a pseudo-random unit
// vector seeded by FNV-1a-64 of the string. On the image side it inverts
// the mock inpainter's solid fill: if the crop's dominant color equals a
// registered label's fill color, it returns that label's (template-
// rendered) text vector rotated by a fixed small angle, so the closed
// loop yields cosine == cos(angle). Unknown colors hash to fresh vectors.

// Fill color the mock inpainter uses for a label: FNV-1a-32 low 24 bits
// read as 0xRRGGBB.
RgbColor mock_fill_color(const std::string& label);

class MockVlBackend final : public VlBackend {
 public:
  explicit MockVlBackend(std::vector<std::string> labels = {},
                         PromptTemplate scoring_template = default_scoring_template(),
                         std::size_t dim = 512, double id_angle_deg = 10.0);

  void register_label(const std::string& label);

  std::string id() const override { return "mock-vl"; }
  std::size_t dim() const override { return dim_; }
  EmbeddingVector embed_image(const Raster& crop) override;
  EmbeddingVector embed_text(const std::string& text) override;

 private:
  std::size_t dim_;
  double angle_rad_;
  PromptTemplate scoring_template_;
  std::map<std::uint32_t, std::string> color_to_label_;  // packed RGB -> label
};

class MockVisualBackend final : public VisualBackend {
 public:
  explicit MockVisualBackend(std::size_t dim = 512) : dim_(dim) {}

  std::string id() const override { return "mock-visual"; }
  std::size_t dim() const override { return dim_; }
  EmbeddingVector embed_image(const Raster& crop) override;

 private:
  std::size_t dim_;
};

}  // namespace ronin
