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

#include "reqshield/shield.h"

#include <algorithm>
#include <exception>
#include <fstream>
#include <sstream>
#include <thread>

#include "reqshield/error.h"

namespace reqshield {

std::string_view EngineName(EngineKind engine) {
  switch (engine) {
    case EngineKind::kIdentity:
      return "identity";
    case EngineKind::kHierarchy:
      return "hierarchy";
    case EngineKind::kGeneral:
      return "general";
    case EngineKind::kLinear:
      return "linear";
  }
  return "?";
}

std::optional<EngineChoice> ParseEngineChoice(std::string_view name) {
  if (name == "auto") return EngineChoice::kAuto;
  if (name == "hierarchy") return EngineChoice::kHierarchy;
  if (name == "general") return EngineChoice::kGeneral;
  if (name == "linear") return EngineChoice::kLinear;
  return std::nullopt;
}

Shield Shield::FromFile(const std::filesystem::path& path,
                        std::optional<uint32_t> num_variables,
                        const ShieldOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::kIo, "cannot read " + path.string());
  }
  std::ostringstream text;
  text << in.rdbuf();
  return FromText(text.str(), num_variables, options);
}

Shield Shield::FromText(std::string_view text,
                        std::optional<uint32_t> num_variables,
                        const ShieldOptions& options) {
  return FromRequirements(ParseRequirements(text, num_variables), options);
}

Shield Shield::FromRequirements(const RequirementSet& requirements,
                                const ShieldOptions& options) {
  Shield shield;
  shield.requirements_ = Normalize(requirements);
  const RequirementSet& normalized = shield.requirements_;
  const EngineChoice choice = options.engine;

  // Any engine choice is compatible with no requirements at all.
  if (normalized.dialect == Dialect::kEmpty) {
    shield.engine_ = EngineKind::kIdentity;
    return shield;
  }
  if (normalized.dialect == Dialect::kLinear) {
    if (choice != EngineChoice::kAuto && choice != EngineChoice::kLinear) {
      throw Error(ErrorKind::kEngineMismatch,
                  "linear inequalities need engine 'linear'");
    }
    shield.plan_ = EliminationPlan::Compile(normalized, options);
    shield.engine_ = EngineKind::kLinear;
    return shield;
  }
  if (choice == EngineChoice::kLinear) {
    throw Error(ErrorKind::kEngineMismatch,
                "clauses need engine 'hierarchy' or 'general'");
  }
  CnfPlan plan = CnfPlan::Compile(normalized, choice);
  shield.engine_ = plan.engine() == CnfEngineKind::kHierarchy
                       ? EngineKind::kHierarchy
                       : EngineKind::kGeneral;
  shield.plan_ = std::move(plan);
  return shield;
}

std::vector<double> Shield::Apply(std::span<const double> values) const {
  if (const CnfPlan* plan = cnf_plan()) return plan->Apply(values).values;
  if (const EliminationPlan* plan = linear_plan()) {
    return plan->Apply(values).values;
  }
  ValidatePredictions(values, num_variables());
  return {values.begin(), values.end()};
}

std::vector<double> Shield::ApplyBatch(std::span<const double> rows,
                                       unsigned threads) const {
  const size_t width = num_variables();
  if (width == 0) {
    if (!rows.empty()) {
      throw Error(ErrorKind::kInvalidInput, "rows for a zero-width shield");
    }
    return {};
  }
  if (rows.size() % width != 0) {
    throw Error(ErrorKind::kInvalidInput,
                "batch size is not a multiple of " + std::to_string(width));
  }
  const size_t num_rows = rows.size() / width;
  std::vector<double> out(rows.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(
      std::min<size_t>(threads, std::max<size_t>(num_rows, 1)));

  auto run = [&](size_t begin, size_t end) {
    for (size_t r = begin; r < end; ++r) {
      const std::vector<double> row = Apply(rows.subspan(r * width, width));
      std::copy(row.begin(), row.end(), out.begin() + r * width);
    }
  };
  if (threads <= 1) {
    run(0, num_rows);
    return out;
  }
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> workers;
    const size_t chunk = (num_rows + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const size_t begin = std::min(num_rows, t * chunk);
      const size_t end = std::min(num_rows, begin + chunk);
      workers.emplace_back([&, t, begin, end] {
        try {
          run(begin, end);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
  }
  for (const auto& error : errors) {
    if (error) std::rethrow_exception(error);
  }
  return out;
}

std::string Shield::Summary() const {
  std::ostringstream out;
  out << "dialect: " << DialectName(requirements_.dialect) << "\n";
  out << "engine: " << EngineName(engine_) << "\n";
  out << "variables: " << num_variables() << "\n";
  if (requirements_.dialect == Dialect::kLinear) {
    out << "inequalities: " << requirements_.inequalities.size() << "\n";
  } else {
    out << "clauses: " << requirements_.clauses.size() << "\n";
  }
  auto join = [](const std::vector<VariableIndex>& indices) {
    std::string text;
    for (const VariableIndex v : indices) {
      if (!text.empty()) text += ",";
      text += std::to_string(v);
    }
    return text;
  };
  if (const EliminationPlan* plan = linear_plan()) {
    out << "derived constraints: " << plan->num_derived_kept() << "\n";
    out << "fourier-motzkin products: " << plan->derived_count() << "\n";
    out << "ordering: " << join(plan->ordering()) << "\n";
  } else {
    out << "derived constraints: 0\n";
  }
  if (const CnfPlan* plan = cnf_plan()) {
    if (plan->engine() == CnfEngineKind::kHierarchy) {
      out << "implications: " << plan->edges().size() << "\n";
      out << "topological order: " << join(plan->topological_order()) << "\n";
    }
  }
  for (const std::string& warning : requirements_.warnings) {
    out << "warning: " << warning << "\n";
  }
  return out.str();
}

}  // namespace reqshield
