#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "ronin/detections.hpp"

namespace ronin {

// Text template with a mandatory {label} placeholder and an optional
// {exclusions} slot. Exclusion concepts render as `exclusion_clause`
// instances joined by `exclusion_joiner`; dangling joiners left by an
// empty slot are trimmed so a refined pattern degrades to the simple one.
struct PromptTemplate {
  std::string pattern = "{label}";
  std::string exclusion_clause = "not a {concept}";
  std::string exclusion_joiner = ", ";
};

// Built-in defaults. Inpainting conditions on the bare label; scoring uses
// the conventional photo template; the refined pattern appends negations.
PromptTemplate default_inpaint_template();
PromptTemplate default_refined_template();
PromptTemplate default_scoring_template();

// Canonical ID label -> ordered near-OOD concepts to exclude.
using ExclusionMap = std::map<std::string, std::vector<std::string>>;

struct RenderedPrompt {
  std::string text;
  bool refined = false;  // false when the label fell back to the simple prompt
};

std::string simple_prompt(const std::string& label, const PromptTemplate& tmpl);

// Uses the exclusion list for `label` when present; falls back to
// simple_prompt otherwise (callers log the fallback).
RenderedPrompt refined_prompt(const std::string& label, const ExclusionMap& exclusions,
                              const PromptTemplate& tmpl);

// JSON object file: {"horse": ["donkey", "zebra", ...], ...}
// Keys and concepts are canonicalized; empty lists and self-referential
// entries are rejected.
ExclusionMap load_exclusions(const std::filesystem::path& path,
                             const LabelNormalizer& normalizer = LabelNormalizer());

}  // namespace ronin
