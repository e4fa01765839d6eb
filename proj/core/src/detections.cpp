#include "ronin/detections.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "ronin/error.hpp"
#include "ronin/image.hpp"

namespace ronin {

const char* to_string(GtFlag f) { return f == GtFlag::id ? "id" : "ood"; }

GtFlag gt_flag_from_string(const std::string& s) {
  if (s == "id") return GtFlag::id;
  if (s == "ood") return GtFlag::ood;
  throw Error(ErrorCode::parse, "gt flag must be \"id\" or \"ood\", got \"" + s + "\"");
}

bool Manifest::has_id_label(const std::string& label) const {
  return std::find(id_labels.begin(), id_labels.end(), label) != id_labels.end();
}

std::size_t Manifest::detection_count() const {
  std::size_t n = 0;
  for (const auto& img : images) n += img.detections.size();
  return n;
}

namespace {

std::string trim_lower(const std::string& raw) {
  std::size_t b = 0, e = raw.size();
  while (b < e && std::isspace(static_cast<unsigned char>(raw[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(raw[e - 1]))) --e;
  std::string s = raw.substr(b, e - b);
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::map<std::string, std::string> builtin_table() {
  return {
      {"aeroplane", "airplane"},
      {"couch", "sofa"},
      {"tv monitor", "tv monitor"},
  };
}

}  // namespace

LabelNormalizer::LabelNormalizer() : table_(builtin_table()) {}

LabelNormalizer::LabelNormalizer(const std::map<std::string, std::string>& extra)
    : table_(builtin_table()) {
  for (const auto& [k, v] : extra) table_[trim_lower(k)] = trim_lower(v);
  // Every mapped value must be a fixed point, otherwise normalize() would
  // not be idempotent.
  for (const auto& [k, v] : table_) {
    auto it = table_.find(v);
    if (it != table_.end() && it->second != v) {
      throw Error(ErrorCode::config,
                  "label table is not idempotent: \"" + k + "\" -> \"" + v + "\" -> \"" +
                      it->second + "\"");
    }
  }
}

std::string LabelNormalizer::normalize(const std::string& raw) const {
  std::string s = trim_lower(raw);
  if (s.empty()) {
    throw Error(ErrorCode::validation, "label is empty after trimming: \"" + raw + "\"");
  }
  auto it = table_.find(s);
  return it == table_.end() ? s : it->second;
}

std::vector<Violation> validate_manifest(const Manifest& m, const LabelNormalizer& normalizer) {
  std::vector<Violation> out;
  std::set<std::string> label_set(m.id_labels.begin(), m.id_labels.end());
  std::set<std::string> seen_ids;

  for (const auto& img : m.images) {
    if (img.width < 1 || img.height < 1) {
      out.push_back({"degenerate_image", "", img.image_path,
                     "image dimensions must be positive"});
    }
    for (const auto& d : img.detections) {
      auto flag = [&](std::string rule, std::string msg) {
        out.push_back({std::move(rule), d.detection_id, img.image_path, std::move(msg)});
      };
      if (!seen_ids.insert(d.detection_id).second) {
        flag("duplicate_id", "detection_id \"" + d.detection_id + "\" appears more than once");
      }
      if (d.label.empty()) {
        flag("empty_label", "label is empty");
      } else {
        if (!label_set.contains(d.label)) {
          flag("unknown_label", "label \"" + d.label + "\" is not in the ID label set");
        }
        try {
          if (normalizer.normalize(d.label) != d.label) {
            flag("non_canonical_label", "label \"" + d.label + "\" is not canonical");
          }
        } catch (const Error&) {
          flag("non_canonical_label", "label \"" + d.label + "\" is not canonical");
        }
      }
      if (d.box.w < 1 || d.box.h < 1) {
        flag("degenerate_box", "box width and height must be at least 1");
      } else if (d.box.x < 0 || d.box.y < 0 || d.box.right() > img.width ||
                 d.box.bottom() > img.height) {
        std::ostringstream msg;
        msg << "box [" << d.box.x << "," << d.box.y << "," << d.box.w << "," << d.box.h
            << "] exceeds image bounds " << img.width << "x" << img.height;
        flag("box_out_of_bounds", msg.str());
      }
      if (!std::isfinite(d.confidence) || d.confidence < 0.0 || d.confidence > 1.0) {
        flag("confidence_range", "confidence must be in [0,1]");
      }
    }
  }
  return out;
}

namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& what) {
  throw Error(ErrorCode::parse, "manifest line " + std::to_string(line_no) + ": " + what);
}

json parse_line(const std::string& line, std::size_t line_no) {
  try {
    return json::parse(line);
  } catch (const json::parse_error& e) {
    parse_fail(line_no, e.what());
  }
}

Detection parse_detection(const json& j, std::size_t line_no,
                          const LabelNormalizer& normalizer) {
  if (!j.is_object()) parse_fail(line_no, "detection entry is not an object");
  Detection d;
  try {
    d.detection_id = j.at("id").get<std::string>();
    const auto& box = j.at("box");
    if (!box.is_array() || box.size() != 4) {
      parse_fail(line_no, "box must be [x, y, w, h]");
    }
    d.box = {box[0].get<int>(), box[1].get<int>(), box[2].get<int>(), box[3].get<int>()};
    d.label = normalizer.normalize(j.at("label").get<std::string>());
    d.confidence = j.at("confidence").get<double>();
    d.gt_flag = gt_flag_from_string(j.at("gt").get<std::string>());
  } catch (const Error& e) {
    parse_fail(line_no, e.what());
  } catch (const json::exception& e) {
    parse_fail(line_no, e.what());
  }
  return d;
}

}  // namespace

Manifest load_manifest(const std::filesystem::path& path, const LabelNormalizer& normalizer) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open manifest: " + path.string());
  const auto base_dir = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");

  Manifest m;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j = parse_line(line, line_no);

    if (!have_header) {
      if (!j.is_object() || !j.contains("id_labels")) {
        parse_fail(line_no, "first line must be the header {\"id_labels\": [...]}");
      }
      try {
        for (const auto& raw : j.at("id_labels")) {
          std::string canonical = normalizer.normalize(raw.get<std::string>());
          if (!m.has_id_label(canonical)) m.id_labels.push_back(canonical);
        }
      } catch (const Error& e) {
        parse_fail(line_no, e.what());
      } catch (const json::exception& e) {
        parse_fail(line_no, e.what());
      }
      if (j.contains("meta")) m.meta = j.at("meta");
      have_header = true;
      continue;
    }

    ImageRecord rec;
    try {
      rec.image_path = j.at("image_path").get<std::string>();
      if (j.contains("width")) rec.width = j.at("width").get<int>();
      if (j.contains("height")) rec.height = j.at("height").get<int>();
      if (j.contains("detections")) {
        for (const auto& dj : j.at("detections")) {
          rec.detections.push_back(parse_detection(dj, line_no, normalizer));
        }
      }
    } catch (const json::exception& e) {
      parse_fail(line_no, e.what());
    }

    std::filesystem::path p(rec.image_path);
    rec.resolved_path = p.is_absolute() ? p : base_dir / p;
    if (!std::filesystem::exists(rec.resolved_path)) {
      throw Error(ErrorCode::io, "manifest line " + std::to_string(line_no) +
                                     ": missing image file: " + rec.resolved_path.string());
    }
    if (rec.width == 0 || rec.height == 0) {
      auto [w, h] = read_image_size(rec.resolved_path);
      rec.width = w;
      rec.height = h;
    }
    m.images.push_back(std::move(rec));
  }
  if (!have_header) {
    throw Error(ErrorCode::parse, "manifest is empty: " + path.string());
  }

  auto violations = validate_manifest(m, normalizer);
  if (!violations.empty()) {
    std::ostringstream msg;
    msg << "manifest failed validation (" << violations.size() << " violation"
        << (violations.size() == 1 ? "" : "s") << "):";
    for (const auto& v : violations) {
      msg << "\n  [" << v.rule << "] ";
      if (!v.detection_id.empty()) msg << "detection \"" << v.detection_id << "\" ";
      msg << "in " << v.image_path << ": " << v.message;
    }
    throw Error(ErrorCode::validation, msg.str());
  }
  return m;
}

void save_manifest(const Manifest& m, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::io, "cannot write manifest: " + path.string());
  json header;
  header["id_labels"] = m.id_labels;
  header["meta"] = m.meta;
  out << header.dump() << "\n";
  for (const auto& img : m.images) {
    json j;
    j["image_path"] = img.image_path;
    j["width"] = img.width;
    j["height"] = img.height;
    j["detections"] = json::array();
    for (const auto& d : img.detections) {
      json dj;
      dj["id"] = d.detection_id;
      dj["box"] = {d.box.x, d.box.y, d.box.w, d.box.h};
      dj["label"] = d.label;
      dj["confidence"] = d.confidence;
      dj["gt"] = to_string(d.gt_flag);
      j["detections"].push_back(std::move(dj));
    }
    out << j.dump() << "\n";
  }
  if (!out) throw Error(ErrorCode::io, "short write: " + path.string());
}

}  // namespace ronin
