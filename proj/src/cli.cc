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

#include "reqshield/cli.h"

#include <charconv>
#include <cstdint>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "reqshield/batch_io.h"
#include "reqshield/error.h"
#include "reqshield/report.h"
#include "reqshield/shield.h"

namespace reqshield {
namespace {

struct CliConfig {
  std::string requirements_path;
  std::string input_path;
  std::string output_path;
  std::string report_path;
  std::optional<uint32_t> num_variables;
  std::string engine = "auto";
  std::string ordering;
  double strict_epsilon = ShieldOptions{}.strict_epsilon;
  double tolerance = kDefaultTolerance;
  size_t fm_cap = ShieldOptions{}.derived_cap;
};

std::vector<VariableIndex> ParseOrdering(const std::string& text) {
  std::vector<VariableIndex> ordering;
  size_t start = 0;
  while (start <= text.size()) {
    size_t comma = text.find(',', start);
    if (comma == std::string::npos) comma = text.size();
    std::string_view item(text.data() + start, comma - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    VariableIndex index = 0;
    const auto [ptr, ec] =
        std::from_chars(item.data(), item.data() + item.size(), index);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
      throw Error(ErrorKind::kInvalidOrdering,
                  "'" + std::string(item) + "' is not a variable index");
    }
    ordering.push_back(index);
    start = comma + 1;
  }
  return ordering;
}

ShieldOptions MakeOptions(const CliConfig& config) {
  ShieldOptions options;
  const auto engine = ParseEngineChoice(config.engine);
  if (!engine) {
    throw Error(ErrorKind::kInvalidOptions,
                "unknown engine '" + config.engine +
                    "' (expected auto, hierarchy, general or linear)");
  }
  options.engine = *engine;
  if (!config.ordering.empty())
    options.ordering = ParseOrdering(config.ordering);
  options.strict_epsilon = config.strict_epsilon;
  options.derived_cap = config.fm_cap;
  return options;
}

int Compile(const CliConfig& config, std::ostream& out) {
  const Shield shield = Shield::FromFile(
      config.requirements_path, config.num_variables, MakeOptions(config));
  out << shield.Summary();
  return kExitOk;
}

// Reads the batch and builds a shield as wide as the batch unless -n says
// otherwise.
std::pair<PredictionBatch, Shield> Load(const CliConfig& config) {
  PredictionBatch batch = ReadBatch(
      config.input_path, config.num_variables
                             ? std::optional<size_t>(*config.num_variables)
                             : std::nullopt);
  Shield shield =
      Shield::FromFile(config.requirements_path,
                       static_cast<uint32_t>(batch.width), MakeOptions(config));
  return {std::move(batch), std::move(shield)};
}

int Apply(const CliConfig& config, std::ostream& out, std::ostream& err) {
  auto [batch, shield] = Load(config);
  const CorrectionRun run = CorrectBatch(shield, batch, config.tolerance);
  if (const size_t left = run.report.total_violations_after(); left > 0) {
    err << "internal error: " << left
        << " requirement violations remain after correction\n";
    return kExitGuaranteeFailed;
  }
  WriteBatch(run.corrected, config.output_path);
  if (!config.report_path.empty()) WriteReport(run.report, config.report_path);
  out << "engine: " << EngineName(shield.engine()) << "\n"
      << "rows: " << run.report.rows_processed << "\n"
      << "rows corrected: " << run.report.rows_corrected << "\n";
  return kExitOk;
}

int Check(const CliConfig& config, std::ostream& out) {
  auto [batch, shield] = Load(config);
  const CorrectionReport report = CheckBatch(shield, batch, config.tolerance);
  if (!config.report_path.empty()) WriteReport(report, config.report_path);
  size_t total = 0;
  for (const RequirementCounts& r : report.requirements) {
    out << "line " << r.source_line << ": " << r.text << ": "
        << r.violations_before << " violating rows\n";
    total += r.violations_before;
  }
  out << "rows: " << report.rows_processed
      << ", compliant: " << report.rows_compliant << "\n";
  return total == 0 ? kExitOk : kExitViolations;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Correct prediction batches so they satisfy a requirement file",
               "reqshield"};
  app.require_subcommand(1);
  CliConfig config;

  auto add_common = [&](CLI::App* command) {
    command
        ->add_option("-r,--requirements", config.requirements_path,
                     "Requirement file (CNF clauses or linear inequalities)")
        ->required()
        ->envname("SHIELD_REQUIREMENTS");
    command
        ->add_option("-n,--num-variables", config.num_variables,
                     "Number of output variables")
        ->envname("SHIELD_NUM_VARIABLES");
    command
        ->add_option("--engine", config.engine,
                     "auto, hierarchy, general or linear")
        ->envname("SHIELD_ENGINE");
    command
        ->add_option("--ordering", config.ordering,
                     "Comma-separated variable order for the linear engine")
        ->envname("SHIELD_ORDERING");
    command
        ->add_option("--strict-epsilon", config.strict_epsilon,
                     "Margin used for strict inequalities")
        ->envname("SHIELD_STRICT_EPSILON");
    command
        ->add_option("--fm-cap", config.fm_cap,
                     "Maximum number of Fourier-Motzkin products")
        ->envname("SHIELD_FM_CAP");
  };
  auto add_batch = [&](CLI::App* command) {
    command->add_option("-i,--input", config.input_path, "Prediction CSV")
        ->required()
        ->envname("SHIELD_INPUT");
    command->add_option("--report", config.report_path, "JSON report path")
        ->envname("SHIELD_REPORT");
    command
        ->add_option("--tolerance", config.tolerance,
                     "Slack tolerance for linear requirements")
        ->envname("SHIELD_TOLERANCE");
  };

  CLI::App* compile = app.add_subcommand("compile", "Compile and summarize");
  add_common(compile);
  CLI::App* apply = app.add_subcommand("apply", "Correct a prediction batch");
  add_common(apply);
  add_batch(apply);
  apply->add_option("-o,--output", config.output_path, "Corrected CSV")
      ->required()
      ->envname("SHIELD_OUTPUT");
  CLI::App* check = app.add_subcommand("check", "Count violations only");
  add_common(check);
  add_batch(check);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (compile->parsed()) return Compile(config, out);
    if (apply->parsed()) return Apply(config, out, err);
    return Check(config, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

}  // namespace reqshield
