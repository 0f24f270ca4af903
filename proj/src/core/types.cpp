// Copyright (c) vnkit contributors
// SPDX-License-Identifier: Apache-2.0
#include "vnkit/core/types.hpp"

namespace vnkit::core {

namespace {

constexpr const char* kLabelNames[kScriptLabelCount] = {
    "social_proof",
    "sore_point",
    "call_to_action",
    "design_of_appearance",
    "ingredient_material_texture",
    "product_trial",
    "product_effect",
    "product_security",
    "specific_characteristics",
    "authoritative_certificate",
    "production_process",
    "others",
};

}  // namespace

const char* script_label_name(ScriptLabel l) {
  return kLabelNames[static_cast<int>(l)];
}

std::optional<ScriptLabel> script_label_from_name(std::string_view name) {
  for (int i = 0; i < kScriptLabelCount; ++i) {
    if (name == kLabelNames[i]) return static_cast<ScriptLabel>(i);
  }
  return std::nullopt;
}

const std::vector<ScriptLabel>& all_script_labels() {
  static const std::vector<ScriptLabel> labels = [] {
    std::vector<ScriptLabel> v;
    for (int i = 0; i < kScriptLabelCount; ++i) v.push_back(static_cast<ScriptLabel>(i));
    return v;
  }();
  return labels;
}

}  // namespace vnkit::core
