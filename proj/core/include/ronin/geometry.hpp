#pragma once

#include <cstdint>

namespace ronin {

// Axis-aligned pixel rectangle, integer top-left convention.
// Detections and masks share this geometry; the bounds they must satisfy
// differ (box within image, mask within box) and are checked by the owners.
struct Rect {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;

  bool operator==(const Rect&) const = default;

  int right() const { return x + w; }
  int bottom() const { return y + h; }
  long long area() const { return static_cast<long long>(w) * h; }

  bool contains(const Rect& inner) const {
    return inner.x >= x && inner.y >= y && inner.right() <= right() &&
           inner.bottom() <= bottom();
  }

  bool within_image(int width, int height) const {
    return x >= 0 && y >= 0 && w >= 1 && h >= 1 && right() <= width &&
           bottom() <= height;
  }

  bool intersects(const Rect& o) const {
    return x < o.right() && o.x < right() && y < o.bottom() && o.y < bottom();
  }
};

using BoundingBox = Rect;
using MaskRect = Rect;

}  // namespace ronin
