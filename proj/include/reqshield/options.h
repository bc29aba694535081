// Copyright 2026 The reqshield Authors.
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

#ifndef REQSHIELD_OPTIONS_H_
#define REQSHIELD_OPTIONS_H_

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "reqshield/requirements.h"

namespace reqshield {

enum class EngineChoice { kAuto, kHierarchy, kGeneral, kLinear };

std::optional<EngineChoice> ParseEngineChoice(std::string_view name);

struct ShieldOptions {
  EngineChoice engine = EngineChoice::kAuto;
  // Linear engine processing order; ascending index when unset.
  std::optional<std::vector<VariableIndex>> ordering;
  // Margin that turns `> b` into `>= b + strict_epsilon`.
  double strict_epsilon = 1e-6;
  // Maximum number of Fourier-Motzkin products before giving up.
  size_t derived_cap = 10000;
};

// The truth threshold for reading real outputs as Booleans: a literal holds
// when its degree (p for y_k, 1 - p for not y_k) is at least this value.
inline constexpr double kTruthThreshold = 0.5;

// Slack tolerance when checking linear requirements on corrected outputs.
inline constexpr double kDefaultTolerance = 1e-9;

}  // namespace reqshield

#endif  // REQSHIELD_OPTIONS_H_
