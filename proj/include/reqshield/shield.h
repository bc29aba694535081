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

#ifndef REQSHIELD_SHIELD_H_
#define REQSHIELD_SHIELD_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "reqshield/cnf_engine.h"
#include "reqshield/linear_engine.h"
#include "reqshield/options.h"
#include "reqshield/requirements.h"

namespace reqshield {

enum class EngineKind { kIdentity, kHierarchy, kGeneral, kLinear };

std::string_view EngineName(EngineKind engine);

// A compiled, immutable correction operator. Every output of Apply satisfies
// the requirements it was built from. Safe to share between threads.
class Shield {
 public:
  // Reads, parses, normalizes and compiles a requirement file.
  static Shield FromFile(const std::filesystem::path& path,
                         std::optional<uint32_t> num_variables,
                         const ShieldOptions& options = {});
  static Shield FromText(std::string_view text,
                         std::optional<uint32_t> num_variables,
                         const ShieldOptions& options = {});
  // `requirements` may be raw parser output; it is normalized here.
  static Shield FromRequirements(const RequirementSet& requirements,
                                 const ShieldOptions& options = {});

  EngineKind engine() const { return engine_; }
  uint32_t num_variables() const { return requirements_.num_variables; }
  // Normalized requirements.
  const RequirementSet& requirements() const { return requirements_; }

  const CnfPlan* cnf_plan() const { return std::get_if<CnfPlan>(&plan_); }
  const EliminationPlan* linear_plan() const {
    return std::get_if<EliminationPlan>(&plan_);
  }

  std::vector<double> Apply(std::span<const double> values) const;

  // Row-major batch of `num_variables()`-wide rows. Rows are split across
  // `threads` workers (0 picks the hardware concurrency); the result does not
  // depend on the thread count.
  std::vector<double> ApplyBatch(std::span<const double> rows,
                                 unsigned threads = 0) const;

  // Human-readable plan description, one "key: value" per line.
  std::string Summary() const;

 private:
  Shield() = default;

  RequirementSet requirements_;
  EngineKind engine_ = EngineKind::kIdentity;
  std::variant<std::monostate, CnfPlan, EliminationPlan> plan_;
};

}  // namespace reqshield

#endif  // REQSHIELD_SHIELD_H_
