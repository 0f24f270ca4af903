// Copyright (c) vnkit contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vnkit/core/types.hpp"
#include "vnkit/text/tokenize.hpp"

namespace vnkit::gen {

struct GenRequest {
  std::string prompt;
  core::LengthRange budget;
  std::optional<core::ScriptLabel> requested_label;  // predefined mode
  int clip_index = 1;  // 1-based
  std::size_t clip_count = 1;
  std::vector<std::string> knowledge;
  text::CountingMode counting_mode = text::CountingMode::token_count;
  std::uint64_t seed = 0;
  int max_new_tokens = 256;
};

/// Produces raw generator output in the instruction grammar
/// ("LABEL: ...\nNARRATION: ..."). Implementations may throw IoError on
/// transport failure; the orchestrator's retry loop handles it.
class GeneratorBackend {
 public:
  virtual ~GeneratorBackend() = default;
  virtual std::string generate(const GenRequest& request) = 0;
  virtual const char* name() const = 0;
};

/// Deterministic narration text for the offline template backend: a
/// label-specific lead phrase followed by round-robin knowledge units, sized
/// so the unit count lands inside the budget. Throws InfeasibleBudgetError
/// when hi < 1 and InvalidInputError when knowledge is empty.
std::string template_generate(const std::vector<std::string>& knowledge,
                              core::LengthRange budget, core::ScriptLabel label,
                              std::uint64_t seed, text::CountingMode mode,
                              int clip_index = 1);

/// Fully offline, deterministic backend used for tests and desk-scale runs.
/// In generated mode it walks the label taxonomy by clip index.
class TemplateBackend final : public GeneratorBackend {
 public:
  explicit TemplateBackend(std::uint64_t seed) : seed_(seed) {}

  std::string generate(const GenRequest& request) override;
  const char* name() const override { return "template"; }

 private:
  std::uint64_t seed_;
};

/// Client for the generation service contract:
///   POST {endpoint}/generate {"prompt": str, "max_new_tokens": int,
///                             "stop": [str...]} -> {"text": str}
class HttpGeneratorBackend final : public GeneratorBackend {
 public:
  HttpGeneratorBackend(std::string endpoint, std::string auth_token = {});

  std::string generate(const GenRequest& request) override;
  const char* name() const override { return "http"; }

 private:
  std::string endpoint_;
  std::string auth_token_;
};

}  // namespace vnkit::gen
