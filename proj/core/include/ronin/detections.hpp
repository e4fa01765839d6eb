#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "ronin/geometry.hpp"

namespace ronin {

enum class GtFlag { id, ood };

const char* to_string(GtFlag f);
GtFlag gt_flag_from_string(const std::string& s);  // "id" | "ood"

struct Detection {
  std::string detection_id;
  BoundingBox box;
  std::string label;       // canonical: trimmed, lowercased, US spelling
  double confidence = 0.0;  // detector confidence in [0,1]
  GtFlag gt_flag = GtFlag::id;

  bool operator==(const Detection&) const = default;
};

struct ImageRecord {
  std::string image_path;  // as written in the manifest
  std::filesystem::path resolved_path;  // relative paths resolved against the manifest dir
  int width = 0;
  int height = 0;
  std::vector<Detection> detections;

  bool operator==(const ImageRecord& o) const {
    return image_path == o.image_path && width == o.width && height == o.height &&
           detections == o.detections;
  }
};

struct Manifest {
  std::vector<std::string> id_labels;  // canonical ID label set, order preserved
  std::vector<ImageRecord> images;
  nlohmann::json meta = nlohmann::json::object();

  bool has_id_label(const std::string& label) const;
  std::size_t detection_count() const;
};

// Canonicalizes raw detector labels: trim, ASCII-lowercase, then a
// British->US spelling table. The table is extensible, but every mapped
// value must itself be a fixed point so normalization stays idempotent.
class LabelNormalizer {
 public:
  LabelNormalizer();  // built-in table only
  explicit LabelNormalizer(const std::map<std::string, std::string>& extra);

  std::string normalize(const std::string& raw) const;

 private:
  std::map<std::string, std::string> table_;
};

struct Violation {
  std::string rule;  // e.g. "duplicate_id", "unknown_label", "box_out_of_bounds"
  std::string detection_id;
  std::string image_path;
  std::string message;
};

// Pure check against the type invariants; violations are data, not errors.
std::vector<Violation> validate_manifest(const Manifest& m,
                                         const LabelNormalizer& normalizer = LabelNormalizer());

// Loads and validates a JSONL manifest. Header line:
//   {"id_labels": [...], "meta": {...}}
// followed by one image object per line. Labels are canonicalized on load;
// image dimensions are read from file headers when absent. Throws on parse
// errors (with line numbers), missing image files and invariant violations.
Manifest load_manifest(const std::filesystem::path& path,
                       const LabelNormalizer& normalizer = LabelNormalizer());

void save_manifest(const Manifest& m, const std::filesystem::path& path);

}  // namespace ronin
