// Copyright 2026 The Fallax Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fallax/hypothesis.hpp"

#include "fallax/errors.hpp"
#include "fallax/text.hpp"

namespace fallax {

const char* hypothesis_mode_name(HypothesisMode m) {
  return m == HypothesisMode::Raw ? "raw" : "structural";
}

HypothesisMode parse_hypothesis_mode(std::string_view s) {
  const std::string k = to_lower(s);
  if (k == "raw") return HypothesisMode::Raw;
  if (k == "structural" || k == "struct") return HypothesisMode::Structural;
  throw ConfigError("unknown hypothesis mode: \"" + std::string(s) + "\"");
}

std::string build_hypothesis(const FallacyType& type, HypothesisMode mode) {
  if (mode == HypothesisMode::Raw)
    return "This example is " + type.display_name + ".";
  return type.logical_form.text;
}

}  // namespace fallax
