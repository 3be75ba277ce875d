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

// privshield: protect images against privacy questions, evaluate, sweep and
// run transfer studies. Every flag can also be set through an environment
// variable named PRIVSHIELD_<FLAG>, e.g. PRIVSHIELD_EPSILON=6/255.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/strings/ascii.h"
#include "absl/strings/str_replace.h"
#include "cli/commands.h"
#include "privshield/status.h"

#ifndef PRIVSHIELD_DEFAULT_TEMPLATES
#define PRIVSHIELD_DEFAULT_TEMPLATES "data/templates.txt"
#endif

namespace {

using privshield::cli::RunOptions;

std::string EnvName(const std::string& flag) {
  return "PRIVSHIELD_" +
         absl::AsciiStrToUpper(absl::StrReplaceAll(flag, {{"-", "_"}}));
}

// Raw flag text; numbers are parsed after CLI11 so fractions are accepted.
struct RawFlags {
  std::string epsilon = "6/255";
  std::string eta = "0.5/255";
  std::string lambda_p = "0.6";
  std::string lambda_u = "0.4";
  std::string refusal = "unknown,don't know";
  std::string split = "selected";
  std::string values;
};

template <typename T>
CLI::Option* Flag(CLI::App* app, const std::string& name, T& target,
                  const std::string& help) {
  return app->add_option("--" + name, target, help)
      ->envname(EnvName(name))
      ->capture_default_str();
}

void AddDataset(CLI::App* app, RunOptions& o) {
  Flag(app, "dataset", o.dataset, "Dataset directory with manifest.json")
      ->required();
}

void AddScorer(CLI::App* app, RunOptions& o) {
  app->add_option("--scorer", o.scorers,
                  "Scorer spec: toy:<seed>[:dim] or file:<path>")
      ->envname(EnvName("scorer"))
      ->required();
}

void AddConfig(CLI::App* app, RunOptions& o, RawFlags& raw) {
  Flag(app, "epsilon", raw.epsilon, "L-infinity bound (decimal or n/255)");
  Flag(app, "eta", raw.eta, "Step size (decimal or n/255)");
  Flag(app, "iters", o.iters, "Maximum iterations");
  Flag(app, "check-interval", o.check_interval, "Steps between early-stop checks");
  Flag(app, "lambda-p", raw.lambda_p, "Privacy loss weight");
  Flag(app, "lambda-u", raw.lambda_u, "Utility loss weight");
}

void AddCommon(CLI::App* app, RunOptions& o, RawFlags& raw) {
  Flag(app, "refusal-tokens", raw.refusal, "Comma-separated refusal answers");
  Flag(app, "seed", o.seed, "Question split seed");
  Flag(app, "out", o.out, "Output directory")->required();
  Flag(app, "workers", o.workers, "Worker threads; results do not depend on it");
}

void AddSplit(CLI::App* app, RawFlags& raw) {
  Flag(app, "split", raw.split, "selected, unselected or paraphrased");
}

absl::Status Finalize(RunOptions& o, const RawFlags& raw) {
  ASSIGN_OR_RETURN(o.epsilon, privshield::cli::ParseNumber(raw.epsilon));
  ASSIGN_OR_RETURN(o.eta, privshield::cli::ParseNumber(raw.eta));
  ASSIGN_OR_RETURN(o.lambda_p, privshield::cli::ParseNumber(raw.lambda_p));
  ASSIGN_OR_RETURN(o.lambda_u, privshield::cli::ParseNumber(raw.lambda_u));
  ASSIGN_OR_RETURN(o.split, privshield::cli::ParseSplit(raw.split));
  o.refusal_terms = privshield::cli::ParseRefusalTerms(raw.refusal);
  if (o.refusal_terms.empty()) {
    return privshield::ArgumentError("--refusal-tokens is empty");
  }
  if (o.command == "sweep") {
    if (o.axis == "epsilon") {
      ASSIGN_OR_RETURN(o.epsilons, privshield::cli::ParseNumberList(
                                       raw.values.empty()
                                           ? "0,4/255,6/255,8/255,10/255"
                                           : raw.values));
    } else if (o.axis == "lambda") {
      ASSIGN_OR_RETURN(o.lambdas, privshield::cli::ParseLambdaList(
                                      raw.values.empty()
                                          ? "1:0,0.8:0.2,0.6:0.4,0.4:0.6"
                                          : raw.values));
    }
  }
  return absl::OkStatus();
}

int Report(const absl::Status& status) {
  if (!status.ok()) std::cerr << "privshield: " << status << "\n";
  return privshield::cli::ExitCodeFor(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Input-level privacy protection against vision-language models"};
  app.require_subcommand(1);

  RunOptions options;
  RawFlags raw;

  CLI::App* protect = app.add_subcommand("protect", "Protect every dataset image");
  AddDataset(protect, options);
  AddScorer(protect, options);
  AddConfig(protect, options, raw);
  AddCommon(protect, options, raw);

  CLI::App* evaluate =
      app.add_subcommand("evaluate", "PAR, NPAR, PSNR and SSIM of protected images");
  AddDataset(evaluate, options);
  AddScorer(evaluate, options);
  Flag(evaluate, "protected", options.protected_dir,
       "Directory with images/<id>.png")
      ->required();
  Flag(evaluate, "method", options.method, "Method name in the report");
  AddSplit(evaluate, raw);
  AddCommon(evaluate, options, raw);

  CLI::App* sweep = app.add_subcommand("sweep", "Epsilon or lambda ablation");
  AddDataset(sweep, options);
  AddScorer(sweep, options);
  Flag(sweep, "axis", options.axis, "epsilon or lambda")->required();
  Flag(sweep, "values", raw.values,
       "Comma list; epsilon values or lambda_p:lambda_u pairs");
  AddConfig(sweep, options, raw);
  AddSplit(sweep, raw);
  AddCommon(sweep, options, raw);

  CLI::App* transfer =
      app.add_subcommand("transfer", "Cross-model transfer matrices");
  AddDataset(transfer, options);
  AddScorer(transfer, options);
  AddConfig(transfer, options, raw);
  AddCommon(transfer, options, raw);

  std::string manifest;
  std::string rerun_out;
  int rerun_workers = 0;
  CLI::App* rerun = app.add_subcommand("rerun", "Repeat a run from its manifest");
  rerun->add_option("manifest", manifest, "run_manifest.json")->required();
  rerun->add_option("--out", rerun_out, "Write to this directory instead");
  rerun->add_option("--workers", rerun_workers, "Override the worker count");

  std::string synth_out;
  int synth_count = 12;
  int synth_size = 32;
  std::uint64_t synth_seed = 1;
  std::string templates = PRIVSHIELD_DEFAULT_TEMPLATES;
  CLI::App* synth = app.add_subcommand("synth", "Write a synthetic dataset");
  synth->add_option("--out", synth_out, "Dataset directory")->required();
  synth->add_option("--count", synth_count, "Number of images")->capture_default_str();
  synth->add_option("--size", synth_size, "Image side length")->capture_default_str();
  synth->add_option("--seed", synth_seed, "Generator seed")->capture_default_str();
  synth->add_option("--templates", templates, "Question template file")
      ->envname(EnvName("templates"))
      ->capture_default_str();

  std::string stats_dataset, stats_out;
  CLI::App* stats = app.add_subcommand("stats", "Tuple statistics as CSV");
  stats->add_option("--dataset", stats_dataset, "Dataset directory")->required();
  stats->add_option("--out", stats_out, "Also write the CSV here");

  std::uint64_t scorer_seed = 0;
  int scorer_dim = 32;
  std::string scorer_out;
  CLI::App* make_scorer =
      app.add_subcommand("make-scorer", "Save a toy scorer parameter file");
  make_scorer->add_option("--seed", scorer_seed, "Scorer seed")->required();
  make_scorer->add_option("--dim", scorer_dim, "Embedding dimension")
      ->capture_default_str();
  make_scorer->add_option("--out", scorer_out, "Output JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? privshield::cli::kExitOk : privshield::cli::kExitArgument;
  }

  for (CLI::App* batch : {protect, evaluate, sweep, transfer}) {
    if (!batch->parsed()) continue;
    options.command = batch->get_name();
    if (absl::Status st = Finalize(options, raw); !st.ok()) return Report(st);
    return Report(privshield::cli::RunCommand(options, std::cout));
  }
  if (rerun->parsed()) {
    return Report(
        privshield::cli::Rerun(manifest, rerun_out, rerun_workers, std::cout));
  }
  if (synth->parsed()) {
    return Report(privshield::cli::RunSynth(synth_out, synth_count, synth_size,
                                            synth_seed, templates, std::cout));
  }
  if (stats->parsed()) {
    return Report(privshield::cli::RunStats(stats_dataset, stats_out, std::cout));
  }
  if (make_scorer->parsed()) {
    return Report(privshield::cli::RunMakeScorer(scorer_seed, scorer_dim,
                                                 scorer_out, std::cout));
  }
  return privshield::cli::kExitArgument;
}
