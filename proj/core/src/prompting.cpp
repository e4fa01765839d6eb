#include "ronin/prompting.hpp"

#include <cctype>
#include <fstream>

#include <json.hpp>

#include "ronin/error.hpp"

namespace ronin {

PromptTemplate default_inpaint_template() { return {}; }

PromptTemplate default_refined_template() {
  PromptTemplate t;
  t.pattern = "{label}, {exclusions}";
  return t;
}

PromptTemplate default_scoring_template() {
  PromptTemplate t;
  t.pattern = "a photo of a {label}";
  return t;
}

namespace {

std::size_t count_occurrences(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (std::size_t pos = s.find(needle); pos != std::string::npos;
       pos = s.find(needle, pos + needle.size())) {
    ++n;
  }
  return n;
}

std::string replace_all(std::string s, const std::string& from, const std::string& to) {
  for (std::size_t pos = s.find(from); pos != std::string::npos;
       pos = s.find(from, pos + to.size())) {
    s.replace(pos, from.size(), to);
  }
  return s;
}

void check_template(const PromptTemplate& tmpl) {
  if (count_occurrences(tmpl.pattern, "{label}") != 1) {
    throw Error(ErrorCode::config,
                "prompt template must contain {label} exactly once: \"" + tmpl.pattern + "\"");
  }
  if (count_occurrences(tmpl.pattern, "{exclusions}") > 1) {
    throw Error(ErrorCode::config, "prompt template may contain {exclusions} at most once");
  }
}

std::string tidy(std::string s) {
  // collapse whitespace runs
  std::string out;
  out.reserve(s.size());
  bool in_ws = false;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      in_ws = true;
      continue;
    }
    if (in_ws && !out.empty()) out.push_back(' ');
    in_ws = false;
    out.push_back(c);
  }
  // trim joiner remnants (commas/spaces) at both ends
  std::size_t b = 0, e = out.size();
  while (b < e && (out[b] == ',' || out[b] == ' ')) ++b;
  while (e > b && (out[e - 1] == ',' || out[e - 1] == ' ')) --e;
  return out.substr(b, e - b);
}

std::string render(const std::string& label, const std::vector<std::string>& concepts,
                   const PromptTemplate& tmpl) {
  check_template(tmpl);
  std::string exc;
  for (std::size_t i = 0; i < concepts.size(); ++i) {
    if (i > 0) exc += tmpl.exclusion_joiner;
    exc += replace_all(tmpl.exclusion_clause, "{concept}", concepts[i]);
  }
  std::string s = replace_all(tmpl.pattern, "{label}", label);
  s = replace_all(s, "{exclusions}", exc);
  return tidy(s);
}

}  // namespace

std::string simple_prompt(const std::string& label, const PromptTemplate& tmpl) {
  return render(label, {}, tmpl);
}

RenderedPrompt refined_prompt(const std::string& label, const ExclusionMap& exclusions,
                              const PromptTemplate& tmpl) {
  auto it = exclusions.find(label);
  if (it == exclusions.end() || it->second.empty()) {
    return {simple_prompt(label, tmpl), false};
  }
  return {render(label, it->second, tmpl), true};
}

ExclusionMap load_exclusions(const std::filesystem::path& path,
                             const LabelNormalizer& normalizer) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open exclusions file: " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::parse, "exclusions file " + path.string() + ": " + e.what());
  }
  if (!j.is_object()) {
    throw Error(ErrorCode::parse, "exclusions file must be a JSON object of label -> [concepts]");
  }
  ExclusionMap map;
  for (const auto& [raw_key, value] : j.items()) {
    std::string key = normalizer.normalize(raw_key);
    if (!value.is_array() || value.empty()) {
      throw Error(ErrorCode::validation,
                  "exclusion list for \"" + key + "\" must be a non-empty array");
    }
    std::vector<std::string> concepts;
    for (const auto& c : value) {
      if (!c.is_string()) {
        throw Error(ErrorCode::parse, "exclusion concepts for \"" + key + "\" must be strings");
      }
      std::string concept_label = normalizer.normalize(c.get<std::string>());
      if (concept_label == key) {
        throw Error(ErrorCode::validation,
                    "exclusion list for \"" + key + "\" contains the label itself");
      }
      concepts.push_back(std::move(concept_label));
    }
    map[key] = std::move(concepts);
  }
  return map;
}

}  // namespace ronin
