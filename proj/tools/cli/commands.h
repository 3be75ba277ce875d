// Copyright 2026 The privshield Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PRIVSHIELD_TOOLS_CLI_COMMANDS_H_
#define PRIVSHIELD_TOOLS_CLI_COMMANDS_H_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "privshield/losses.h"
#include "privshield/scorer.h"

namespace privshield::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitOther = 1;
inline constexpr int kExitArgument = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitNumeric = 4;

int ExitCodeFor(const absl::Status& status);

// Which questions of each image's split are evaluated.
enum class SplitSelector { kSelected, kUnselected, kParaphrased };

absl::StatusOr<SplitSelector> ParseSplit(absl::string_view name);
absl::string_view SplitName(SplitSelector split);

// Decimal or fraction ("6/255").
absl::StatusOr<double> ParseNumber(absl::string_view text);
// Comma-separated ParseNumber values.
absl::StatusOr<std::vector<double>> ParseNumberList(absl::string_view text);
// Comma-separated "lambda_p:lambda_u" pairs.
absl::StatusOr<std::vector<LossWeights>> ParseLambdaList(
    absl::string_view text);
// Comma-separated, whitespace-trimmed, empty items dropped.
std::vector<std::string> ParseRefusalTerms(absl::string_view text);

// toy:<seed>[:dim], file:<path> or ext:<endpoint>. External backends have no
// client in this build and are rejected.
absl::StatusOr<std::unique_ptr<Scorer>> ResolveScorer(absl::string_view spec);

// Every input of a command. Serialized as the run manifest.
struct RunOptions {
  std::string command;
  std::filesystem::path dataset;
  std::vector<std::string> scorers;
  double epsilon = 6.0 / 255.0;
  double eta = 0.5 / 255.0;
  int iters = 1200;
  int check_interval = 80;
  double lambda_p = 0.6;
  double lambda_u = 0.4;
  std::vector<std::string> refusal_terms = DefaultRefusalTerms();
  SplitSelector split = SplitSelector::kSelected;
  std::uint64_t seed = 0;
  std::filesystem::path out;
  int workers = 1;

  // evaluate
  std::filesystem::path protected_dir;
  std::string method = "Ours";

  // sweep
  std::string axis;
  std::vector<double> epsilons;
  std::vector<LossWeights> lambdas;
};

inline constexpr char kRunManifestFile[] = "run_manifest.json";
inline constexpr char kSummaryFile[] = "summary.json";

std::string RunManifestJson(const RunOptions& options,
                            absl::string_view timestamp);
absl::StatusOr<RunOptions> ParseRunManifest(absl::string_view json);

// Batch commands. Each writes its artifacts, a summary with their SHA-256
// hashes and a run manifest under options.out, and prints a short report.
absl::Status RunProtect(const RunOptions& options, std::ostream& log);
absl::Status RunEvaluate(const RunOptions& options, std::ostream& log);
absl::Status RunSweep(const RunOptions& options, std::ostream& log);
absl::Status RunTransfer(const RunOptions& options, std::ostream& log);

// Dispatches on options.command.
absl::Status RunCommand(const RunOptions& options, std::ostream& log);

// Re-executes a run manifest. Empty `out` keeps the recorded directory;
// `workers` > 0 replaces the recorded worker count.
absl::Status Rerun(const std::filesystem::path& manifest,
                   const std::filesystem::path& out, int workers,
                   std::ostream& log);

// Utility commands.
absl::Status RunSynth(const std::filesystem::path& out, int count, int size,
                      std::uint64_t seed, const std::filesystem::path& templates,
                      std::ostream& log);
absl::Status RunStats(const std::filesystem::path& dataset,
                      const std::filesystem::path& out, std::ostream& log);
absl::Status RunMakeScorer(std::uint64_t seed, int dim,
                           const std::filesystem::path& out, std::ostream& log);

// Lowercase hex SHA-256.
std::string Sha256Hex(absl::string_view bytes);

}  // namespace privshield::cli

#endif  // PRIVSHIELD_TOOLS_CLI_COMMANDS_H_
