#include "ronin/masking.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <json.hpp>

#include "ronin/error.hpp"

namespace ronin {

const char* to_string(PlanMode m) {
  return m == PlanMode::class_wise ? "class-wise" : "object-wise";
}

PlanMode plan_mode_from_string(const std::string& s) {
  if (s == "class-wise" || s == "class_wise") return PlanMode::class_wise;
  if (s == "object-wise" || s == "object_wise") return PlanMode::object_wise;
  throw Error(ErrorCode::config, "mode must be class-wise or object-wise, got \"" + s + "\"");
}

MaskRect center_mask(const BoundingBox& box, double ratio) {
  if (!(ratio > 0.0 && ratio <= 1.0)) {
    throw Error(ErrorCode::config, "mask ratio must be in (0, 1]");
  }
  auto round_half_up = [](double v) { return static_cast<int>(std::floor(v + 0.5)); };
  int wm = std::clamp(round_half_up(ratio * box.w), 1, box.w);
  int hm = std::clamp(round_half_up(ratio * box.h), 1, box.h);
  return MaskRect{box.x + (box.w - wm) / 2, box.y + (box.h - hm) / 2, wm, hm};
}

MaskPlan build_plan(const ImageRecord& image, PlanMode mode, double ratio) {
  MaskPlan plan;
  plan.mode = mode;
  plan.ratio = ratio;
  plan.image_path = image.image_path;

  std::vector<const Detection*> sorted;
  sorted.reserve(image.detections.size());
  for (const auto& d : image.detections) sorted.push_back(&d);
  std::sort(sorted.begin(), sorted.end(), [](const Detection* a, const Detection* b) {
    return std::tie(a->label, a->detection_id) < std::tie(b->label, b->detection_id);
  });

  if (mode == PlanMode::object_wise) {
    for (const Detection* d : sorted) {
      plan.passes.push_back({d->label, {d->detection_id}, {center_mask(d->box, ratio)}});
    }
    return plan;
  }

  // class-wise: sorted order keeps same-label detections adjacent
  for (const Detection* d : sorted) {
    if (plan.passes.empty() || plan.passes.back().prompt_label != d->label) {
      plan.passes.push_back({d->label, {}, {}});
    }
    plan.passes.back().member_ids.push_back(d->detection_id);
    plan.passes.back().mask_rects.push_back(center_mask(d->box, ratio));
  }
  return plan;
}

MaskImage rasterize(const InpaintPass& pass, int width, int height) {
  MaskImage mask = MaskImage::zeros(width, height);
  for (const auto& r : pass.mask_rects) {
    if (!r.within_image(width, height)) {
      throw Error(ErrorCode::internal, "mask rect out of image bounds");
    }
    for (int y = r.y; y < r.bottom(); ++y) {
      std::fill_n(mask.data.begin() + static_cast<std::size_t>(y) * width + r.x, r.w,
                  std::uint8_t{1});
    }
  }
  return mask;
}

std::string plan_to_json_line(const MaskPlan& plan) {
  nlohmann::json j;
  j["image_path"] = plan.image_path;
  j["mode"] = to_string(plan.mode);
  j["passes"] = nlohmann::json::array();
  for (const auto& p : plan.passes) {
    nlohmann::json pj;
    pj["label"] = p.prompt_label;
    pj["members"] = p.member_ids;
    pj["rects"] = nlohmann::json::array();
    for (const auto& r : p.mask_rects) pj["rects"].push_back({r.x, r.y, r.w, r.h});
    j["passes"].push_back(std::move(pj));
  }
  return j.dump();
}

}  // namespace ronin
