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

#pragma once

#include <string>

#include "fallax/taxonomy.hpp"

namespace fallax {

enum class HypothesisMode : std::uint8_t { Raw, Structural };

const char* hypothesis_mode_name(HypothesisMode m);
HypothesisMode parse_hypothesis_mode(std::string_view s);

/// The entailment hypothesis for one fallacy type. Raw mode yields
/// "This example is <display name>."; structural mode yields the type's
/// logical form verbatim, placeholders included.
std::string build_hypothesis(const FallacyType& type, HypothesisMode mode);

inline std::string build_hypothesis(FallacyId id, HypothesisMode mode,
                                    const Taxonomy& tax = Taxonomy::builtin()) {
  return build_hypothesis(tax.by_id(id), mode);
}

}  // namespace fallax
