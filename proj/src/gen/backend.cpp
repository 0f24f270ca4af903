// Copyright (c) vnkit contributors
// SPDX-License-Identifier: Apache-2.0
#include "vnkit/gen/backend.hpp"

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "vnkit/error.hpp"
#include "vnkit/util/rng.hpp"

namespace vnkit::gen {

namespace {

// Lead phrases per script label, two variants each; the seed picks one.
// Token-mode phrases are plain lowercase words so every word is one unit.
const std::vector<std::string>& lead_words(core::ScriptLabel label, int variant) {
  using L = core::ScriptLabel;
  static const std::vector<std::string> table[12][2] = {
      {{"so", "many", "happy", "customers"}, {"everyone", "is", "talking"}},           // social_proof
      {{"tired", "of", "this", "problem"}, {"struggling", "every", "day"}},            // sore_point
      {{"order", "yours", "today"}, {"tap", "to", "buy", "now"}},                      // call_to_action
      {{"look", "at", "this", "design"}, {"a", "beautiful", "finish"}},                // design_of_appearance
      {{"made", "with", "fine", "material"}, {"crafted", "from", "pure", "texture"}},  // ingredient_material_texture
      {{"try", "it", "right", "here"}, {"watch", "this", "quick", "trial"}},           // product_trial
      {{"see", "the", "real", "results"}, {"the", "effect", "shows", "fast"}},         // product_effect
      {{"safe", "for", "daily", "use"}, {"tested", "and", "gentle"}},                  // product_security
      {{"one", "detail", "stands", "out"}, {"note", "this", "special", "trait"}},      // specific_characteristics
      {{"certified", "by", "experts"}, {"officially", "approved", "quality"}},         // authoritative_certificate
      {{"made", "in", "our", "factory"}, {"watch", "how", "it", "is", "made"}},        // production_process
      {{"and", "there", "is", "more"}, {"one", "more", "thing"}},                      // others
  };
  return table[static_cast<int>(label)][variant & 1];
}

// Character-mode lead phrases (Chinese), one unit per character.
const std::string& lead_chars(core::ScriptLabel label, int variant) {
  static const std::string table[12][2] = {
      {"大家都说好", "口碑满满"},       // social_proof
      {"还在为此烦恼", "天天困扰"},     // sore_point
      {"现在就下单", "立刻带回家"},     // call_to_action
      {"看这外观设计", "颜值在线"},     // design_of_appearance
      {"成分用料讲究", "材质上乘"},     // ingredient_material_texture
      {"现场试用看看", "亲自上手试"},   // product_trial
      {"效果看得见", "见效真快"},       // product_effect
      {"安全温和放心", "用着安心"},     // product_security
      {"这点很特别", "细节出众"},       // specific_characteristics
      {"权威认证背书", "资质齐全"},     // authoritative_certificate
      {"工厂实拍直击", "看生产过程"},   // production_process
      {"还有更多惊喜", "再看一点"},     // others
  };
  return table[static_cast<int>(label)][variant & 1];
}

// Splits text into counting units: surfaces in token mode, single non-space
// non-punctuation code points in character mode.
std::vector<std::string> units_of(const std::string& s, text::CountingMode mode) {
  if (mode == text::CountingMode::token_count) return text::split_surfaces(s);
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    const char32_t cp = text::decode_utf8(s, pos);
    if (text::is_space_cp(cp) || text::is_punct_cp(cp)) continue;
    std::string one;
    text::append_utf8(one, cp);
    out.push_back(std::move(one));
  }
  return out;
}

std::string join_units(const std::vector<std::string>& units, text::CountingMode mode) {
  std::string out;
  const bool spaces = mode == text::CountingMode::token_count;
  for (std::size_t i = 0; i < units.size(); ++i) {
    if (spaces && i > 0) out += ' ';
    out += units[i];
  }
  return out;
}

}  // namespace

std::string template_generate(const std::vector<std::string>& knowledge,
                              core::LengthRange budget, core::ScriptLabel label,
                              std::uint64_t seed, text::CountingMode mode,
                              int clip_index) {
  if (knowledge.empty()) {
    throw InvalidInputError("template_generate: knowledge must be non-empty");
  }
  if (budget.hi < 1 || budget.lo > budget.hi) {
    throw InfeasibleBudgetError("template_generate: no narration fits budget [" +
                                std::to_string(budget.lo) + ", " +
                                std::to_string(budget.hi) + "]");
  }

  const int variant = static_cast<int>(
      (seed ^ static_cast<std::uint64_t>(clip_index) * 0x9E3779B97F4A7C15ULL) & 1);

  std::vector<std::string> units;
  if (mode == text::CountingMode::token_count) {
    units = lead_words(label, variant);
  } else {
    units = units_of(lead_chars(label, variant), mode);
  }

  // Aim at the budget centre; the lead shrinks if even that is too long.
  const int target = budget.lo + (budget.hi - budget.lo) / 2;
  if (static_cast<int>(units.size()) > target) {
    units.resize(static_cast<std::size_t>(target));
  }

  // Knowledge points enter round-robin by clip; wrap within and across
  // points until the target is met.
  std::size_t kp = static_cast<std::size_t>(clip_index - 1) % knowledge.size();
  while (static_cast<int>(units.size()) < target) {
    const auto kp_units = units_of(knowledge[kp], mode);
    for (const auto& u : kp_units) {
      if (static_cast<int>(units.size()) >= target) break;
      units.push_back(u);
    }
    if (kp_units.empty()) {
      units.push_back(mode == text::CountingMode::token_count ? "indeed" : "好");
    }
    kp = (kp + 1) % knowledge.size();
  }

  return join_units(units, mode);
}

std::string TemplateBackend::generate(const GenRequest& request) {
  core::ScriptLabel label;
  if (request.requested_label) {
    label = *request.requested_label;
  } else {
    label = core::all_script_labels()[static_cast<std::size_t>(request.clip_index - 1) %
                                      core::all_script_labels().size()];
  }
  const std::string narration =
      template_generate(request.knowledge, request.budget, label, seed_,
                        request.counting_mode, request.clip_index);
  return std::string("LABEL: ") + core::script_label_name(label) +
         "\nNARRATION: " + narration + "\n";
}

HttpGeneratorBackend::HttpGeneratorBackend(std::string endpoint, std::string auth_token)
    : endpoint_(std::move(endpoint)), auth_token_(std::move(auth_token)) {
  if (endpoint_.empty()) {
    throw InvalidInputError("http generator backend requires an endpoint");
  }
}

std::string HttpGeneratorBackend::generate(const GenRequest& request) {
  nlohmann::json body = {{"prompt", request.prompt},
                         {"max_new_tokens", request.max_new_tokens},
                         {"stop", nlohmann::json::array({"[CLIP", "[CONTROL"})}};
  httplib::Client client(endpoint_);
  client.set_read_timeout(60, 0);
  httplib::Headers headers;
  if (!auth_token_.empty()) headers.emplace("Authorization", "Bearer " + auth_token_);

  auto res = client.Post("/generate", headers, body.dump(), "application/json");
  if (!res) throw IoError("generator service unreachable at " + endpoint_);
  if (res->status != 200) {
    throw IoError("generator service returned status " + std::to_string(res->status));
  }
  nlohmann::json reply;
  try {
    reply = nlohmann::json::parse(res->body);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("generator service returned invalid JSON: ") + e.what());
  }
  if (!reply.contains("text")) throw IoError("generator service reply missing \"text\"");
  return reply["text"].get<std::string>();
}

}  // namespace vnkit::gen
