#pragma once

#include <string>
#include <vector>

#include "ronin/detections.hpp"
#include "ronin/geometry.hpp"
#include "ronin/image.hpp"

namespace ronin {

enum class PlanMode { class_wise, object_wise };

const char* to_string(PlanMode m);
PlanMode plan_mode_from_string(const std::string& s);  // "class-wise" | "object-wise"

// One inpainting pass: a prompt label plus the (unioned) masks of its
// member detections. Class-wise plans carry one pass per distinct label;
// object-wise plans carry one pass per detection.
struct InpaintPass {
  std::string prompt_label;
  std::vector<std::string> member_ids;
  std::vector<MaskRect> mask_rects;  // parallel to member_ids
};

struct MaskPlan {
  PlanMode mode = PlanMode::class_wise;
  double ratio = 0.9;
  std::string image_path;
  std::vector<InpaintPass> passes;
};

// Centered mask covering `ratio` of the box's width and height.
// Dimensions use round-half-up, clamped to >= 1; offsets use floor, so the
// mask is contained in the box and grows monotonically with the ratio.
MaskRect center_mask(const BoundingBox& box, double ratio);

// Groups an image's detections into passes. Deterministic order: passes by
// label (then detection_id in object-wise mode), members by detection_id.
MaskPlan build_plan(const ImageRecord& image, PlanMode mode, double ratio);

// Binary mask over the image: 1 inside any rect of the pass, 0 elsewhere.
MaskImage rasterize(const InpaintPass& pass, int width, int height);

// Debug serialization, one JSON object per plan.
std::string plan_to_json_line(const MaskPlan& plan);

}  // namespace ronin
