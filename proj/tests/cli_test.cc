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

#include "cli/commands.h"

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "gtest/gtest.h"
#include "privshield/status.h"
#include "test_util.h"

namespace privshield::cli {
namespace {

using ::privshield::testing::DataDir;
using ::privshield::testing::TempDir;
using json = nlohmann::json;

namespace fs = std::filesystem;

std::string ReadText(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

json ReadJson(const fs::path& path) { return json::parse(ReadText(path)); }

// Relative path -> SHA-256 for every regular file under `dir`.
std::map<std::string, std::string> TreeHashes(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) {
      out[fs::relative(e.path(), dir).string()] = Sha256Hex(ReadText(e.path()));
    }
  }
  return out;
}

fs::path MakeDataset(const std::string& name, int count, std::uint64_t seed = 3) {
  const fs::path dir = TempDir(name) / "data";
  std::ostringstream log;
  const absl::Status s =
      RunSynth(dir, count, 32, seed, DataDir() / "templates.txt", log);
  EXPECT_TRUE(s.ok()) << s;
  return dir;
}

RunOptions Options(const std::string& command, const fs::path& dataset,
                   const fs::path& out) {
  RunOptions o;
  o.command = command;
  o.dataset = dataset;
  o.scorers = {"toy:7"};
  o.out = out;
  o.iters = 160;
  return o;
}

// ---------------------------------------------------------------------------
// Parsing

TEST(ParseTest, Numbers) {
  EXPECT_DOUBLE_EQ(*ParseNumber("6/255"), 6.0 / 255);
  EXPECT_DOUBLE_EQ(*ParseNumber(" 0.5 "), 0.5);
  EXPECT_DOUBLE_EQ(*ParseNumber("1e-3"), 1e-3);
  EXPECT_TRUE(IsArgumentError(ParseNumber("abc").status()));
  EXPECT_TRUE(IsArgumentError(ParseNumber("1/0").status()));
  EXPECT_TRUE(IsArgumentError(ParseNumber("").status()));
  const auto list = ParseNumberList("0,4/255,6/255");
  ASSERT_TRUE(list.ok());
  EXPECT_EQ(list->size(), 3u);
  EXPECT_DOUBLE_EQ((*list)[2], 6.0 / 255);
  EXPECT_FALSE(ParseNumberList("1,,x").ok());
}

TEST(ParseTest, LambdaPairs) {
  const auto l = ParseLambdaList("1:0,0.8:0.2,0.6:0.4,0.4:0.6");
  ASSERT_TRUE(l.ok());
  ASSERT_EQ(l->size(), 4u);
  EXPECT_EQ((*l)[0], (LossWeights{1.0, 0.0}));
  EXPECT_EQ((*l)[3], (LossWeights{0.4, 0.6}));
  EXPECT_TRUE(IsArgumentError(ParseLambdaList("0.5").status()));
  EXPECT_TRUE(IsArgumentError(ParseLambdaList("a:b").status()));
}

TEST(ParseTest, RefusalTermsAndSplits) {
  EXPECT_EQ(ParseRefusalTerms(" unknown , don't know,,"),
            (std::vector<std::string>{"unknown", "don't know"}));
  EXPECT_TRUE(ParseRefusalTerms("").empty());
  for (SplitSelector s : {SplitSelector::kSelected, SplitSelector::kUnselected,
                          SplitSelector::kParaphrased}) {
    EXPECT_EQ(*ParseSplit(SplitName(s)), s);
  }
  EXPECT_TRUE(IsArgumentError(ParseSplit("everything").status()));
}

TEST(ParseTest, ScorerSpecs) {
  const auto toy = ResolveScorer("toy:7");
  ASSERT_TRUE(toy.ok()) << toy.status();
  EXPECT_EQ((*toy)->label(), "toy:7:32");
  EXPECT_EQ((*ResolveScorer("toy:7:16"))->label(), "toy:7:16");
  EXPECT_TRUE(IsArgumentError(ResolveScorer("toy:").status()));
  EXPECT_TRUE(IsArgumentError(ResolveScorer("toy:x").status()));
  EXPECT_TRUE(IsArgumentError(ResolveScorer("magic:1").status()));
  EXPECT_TRUE(absl::IsFailedPrecondition(ResolveScorer("ext:http://localhost:1").status()));

  const fs::path file = TempDir("scorer_file") / "toy9.json";
  std::ostringstream log;
  ASSERT_TRUE(RunMakeScorer(9, 32, file, log).ok());
  const auto saved = ResolveScorer("file:" + file.string());
  ASSERT_TRUE(saved.ok()) << saved.status();
  EXPECT_EQ((*saved)->label(), (*ResolveScorer("toy:9"))->label());
  EXPECT_TRUE(IsDataError(ResolveScorer("file:/nonexistent/x.json").status()));
}

TEST(ExitCodeTest, Categories) {
  EXPECT_EQ(ExitCodeFor(absl::OkStatus()), kExitOk);
  EXPECT_EQ(ExitCodeFor(ArgumentError("x")), kExitArgument);
  EXPECT_EQ(ExitCodeFor(ConfigurationError("x")), kExitArgument);
  EXPECT_EQ(ExitCodeFor(DataError("x")), kExitData);
  EXPECT_EQ(ExitCodeFor(absl::NotFoundError("x")), kExitData);
  EXPECT_EQ(ExitCodeFor(NumericError("x")), kExitNumeric);
  EXPECT_EQ(ExitCodeFor(absl::InternalError("x")), kExitOther);
  EXPECT_NE(kExitArgument, kExitData);
  EXPECT_NE(kExitData, kExitNumeric);
}

TEST(RunManifestTest, RoundTrip) {
  RunOptions o = Options("sweep", "/data/x", "/out/y");
  o.scorers = {"toy:1", "toy:2:16"};
  o.epsilon = 8.0 / 255;
  o.split = SplitSelector::kParaphrased;
  o.seed = 42;
  o.workers = 3;
  o.axis = "lambda";
  o.lambdas = {{1.0, 0.0}, {0.6, 0.4}};
  o.refusal_terms = {"unknown"};
  const auto parsed = ParseRunManifest(RunManifestJson(o, "2026-01-01T00:00:00Z"));
  ASSERT_TRUE(parsed.ok()) << parsed.status();
  EXPECT_EQ(parsed->command, o.command);
  EXPECT_EQ(parsed->dataset, o.dataset);
  EXPECT_EQ(parsed->scorers, o.scorers);
  EXPECT_EQ(parsed->epsilon, o.epsilon);
  EXPECT_EQ(parsed->eta, o.eta);
  EXPECT_EQ(parsed->iters, o.iters);
  EXPECT_EQ(parsed->split, o.split);
  EXPECT_EQ(parsed->seed, o.seed);
  EXPECT_EQ(parsed->workers, o.workers);
  EXPECT_EQ(parsed->axis, o.axis);
  EXPECT_EQ(parsed->lambdas, o.lambdas);
  EXPECT_EQ(parsed->refusal_terms, o.refusal_terms);
  EXPECT_TRUE(IsDataError(ParseRunManifest("{}").status()));
}

// ---------------------------------------------------------------------------
// protect

TEST(ProtectCommandTest, ZeroEpsilonReproducesInputs) {
  const fs::path data = MakeDataset("protect_zero", 3);
  const fs::path out = data.parent_path() / "out";
  RunOptions o = Options("protect", data, out);
  o.epsilon = 0.0;
  std::ostringstream log;
  ASSERT_TRUE(RunProtect(o, log).ok());
  for (const auto& e : fs::directory_iterator(data / "images")) {
    EXPECT_EQ(ReadText(out / "images" / e.path().filename()), ReadText(e.path()))
        << e.path().filename();
  }
}

TEST(ProtectCommandTest, SidecarEchoesDefaultConfiguration) {
  const fs::path data = MakeDataset("protect_sidecar", 2);
  const fs::path out = data.parent_path() / "out";
  RunOptions o = Options("protect", data, out);
  o.iters = 1200;
  const auto before = TreeHashes(data);
  std::ostringstream log;
  ASSERT_TRUE(RunProtect(o, log).ok());
  EXPECT_EQ(TreeHashes(data), before);

  const json sidecar = ReadJson(out / "sidecars" / "img0000.json");
  const json& c = sidecar.at("config");
  EXPECT_DOUBLE_EQ(c.at("step_size").get<double>(), 0.5 / 255);
  EXPECT_DOUBLE_EQ(c.at("epsilon").get<double>(), 6.0 / 255);
  EXPECT_EQ(c.at("max_iterations").get<int>(), 1200);
  EXPECT_EQ(c.at("check_interval").get<int>(), 80);
  EXPECT_DOUBLE_EQ(c.at("lambda_p").get<double>(), 0.6);
  EXPECT_DOUBLE_EQ(c.at("lambda_u").get<double>(), 0.4);
  EXPECT_EQ(c.at("refusal_terms").get<std::vector<std::string>>(),
            (std::vector<std::string>{"unknown", "don't know"}));
  EXPECT_TRUE(sidecar.contains("iterations_run"));
  EXPECT_TRUE(sidecar.contains("early_stopped"));

  const json summary = ReadJson(out / kSummaryFile);
  EXPECT_EQ(summary.at("images").get<int>(), 2);
  EXPECT_TRUE(summary.contains("mean_iterations"));
  EXPECT_TRUE(summary.contains("early_stop_fraction"));

  // Progress lines are standalone JSON records.
  std::istringstream progress(ReadText(out / "progress.jsonl"));
  std::string line;
  int lines = 0;
  while (std::getline(progress, line)) {
    const json record = json::parse(line);
    EXPECT_EQ(record.at("step").get<int>() % 80, 0);
    ++lines;
  }
  EXPECT_GT(lines, 0);
}

TEST(ProtectCommandTest, RerunIsBitIdenticalAcrossWorkerCounts) {
  const fs::path data = MakeDataset("protect_rerun", 4);
  const fs::path first = data.parent_path() / "first";
  const fs::path second = data.parent_path() / "second";
  std::ostringstream log;
  ASSERT_TRUE(RunProtect(Options("protect", data, first), log).ok());
  ASSERT_TRUE(Rerun(first / kRunManifestFile, second, 3, log).ok());
  const json a = ReadJson(first / kSummaryFile);
  const json b = ReadJson(second / kSummaryFile);
  ASSERT_FALSE(a.at("artifacts").empty());
  EXPECT_EQ(a.at("artifacts"), b.at("artifacts"));
  EXPECT_EQ(ReadJson(second / kRunManifestFile).at("workers").get<int>(), 3);
}

TEST(ProtectCommandTest, OutputInsideTheDatasetIsRejected) {
  const fs::path data = MakeDataset("protect_inside", 1);
  std::ostringstream log;
  EXPECT_TRUE(IsArgumentError(RunProtect(Options("protect", data, data / "out"), log)));
}

TEST(ProtectCommandTest, UnknownScorerOrDataset) {
  const fs::path data = MakeDataset("protect_bad", 1);
  std::ostringstream log;
  RunOptions o = Options("protect", data, data.parent_path() / "out");
  o.scorers = {"nope"};
  EXPECT_EQ(ExitCodeFor(RunProtect(o, log)), kExitArgument);
  o.scorers = {"toy:1"};
  o.dataset = data.parent_path() / "missing";
  EXPECT_EQ(ExitCodeFor(RunProtect(o, log)), kExitData);
}

// ---------------------------------------------------------------------------
// evaluate

TEST(EvaluateCommandTest, UnprotectedDirectoryMatchesBaseline) {
  const fs::path data = MakeDataset("evaluate_self", 3);
  RunOptions o = Options("evaluate", data, data.parent_path() / "eval");
  o.protected_dir = data;
  std::ostringstream log;
  ASSERT_TRUE(RunEvaluate(o, log).ok());
  const json report = ReadJson(o.out / "report.json");
  EXPECT_EQ(report.at("original"), report.at("protected"));
  const json summary = ReadJson(o.out / kSummaryFile);
  EXPECT_EQ(summary.at("psnr"), "inf");
  EXPECT_EQ(summary.at("ssim").get<double>(), 1.0);
  const std::string methods = ReadText(o.out / "methods.txt");
  EXPECT_EQ(methods.substr(0, methods.find('\n')), "Method           PAR    NPAR  PSNR   SSIM");
  EXPECT_NE(methods.find("No Protection"), std::string::npos);
}

TEST(EvaluateCommandTest, IdMismatchIsDataError) {
  const fs::path data = MakeDataset("evaluate_mismatch", 2);
  const fs::path prot = data.parent_path() / "prot";
  std::ostringstream log;
  ASSERT_TRUE(RunProtect(Options("protect", data, prot), log).ok());
  fs::copy_file(prot / "images" / "img0000.png", prot / "images" / "stranger.png");
  RunOptions o = Options("evaluate", data, data.parent_path() / "eval");
  o.protected_dir = prot;
  const absl::Status s = RunEvaluate(o, log);
  EXPECT_TRUE(IsDataError(s)) << s;
  EXPECT_NE(s.message().find("stranger"), std::string::npos);
}

// Fitting to the selected questions hides them at least as well as the
// questions held out of optimization.
TEST(EvaluateCommandTest, SelectedQuestionsAreHiddenBetterThanHeldOut) {
  const fs::path data = MakeDataset("evaluate_direction", 6, 8);
  int ok = 0;
  constexpr int kRuns = 10;
  for (int run = 0; run < kRuns; ++run) {
    const fs::path base = data.parent_path() / ("run" + std::to_string(run));
    RunOptions protect = Options("protect", data, base / "prot");
    protect.scorers = {"toy:" + std::to_string(20 + run)};
    protect.iters = 1200;
    std::ostringstream log;
    ASSERT_TRUE(RunProtect(protect, log).ok());
    double par[2];
    for (int k = 0; k < 2; ++k) {
      RunOptions eval = protect;
      eval.command = "evaluate";
      eval.protected_dir = base / "prot";
      eval.split = k == 0 ? SplitSelector::kSelected : SplitSelector::kUnselected;
      eval.out = base / (k == 0 ? "sel" : "unsel");
      ASSERT_TRUE(RunEvaluate(eval, log).ok());
      par[k] = ReadJson(eval.out / kSummaryFile).at("par").get<double>();
    }
    ok += par[0] <= par[1];
  }
  EXPECT_GE(ok, 8);
}

// ---------------------------------------------------------------------------
// sweep

TEST(SweepCommandTest, RejectsBadAxesAndSingleValues) {
  const fs::path data = MakeDataset("sweep_bad", 1);
  std::ostringstream log;
  RunOptions o = Options("sweep", data, data.parent_path() / "out");
  o.axis = "gamma";
  o.epsilons = {0.0, 1.0 / 255};
  EXPECT_EQ(ExitCodeFor(RunSweep(o, log)), kExitArgument);
  o.axis = "epsilon";
  o.epsilons = {4.0 / 255};
  EXPECT_EQ(ExitCodeFor(RunSweep(o, log)), kExitArgument);
  o.axis = "lambda";
  o.lambdas = {};
  EXPECT_EQ(ExitCodeFor(RunSweep(o, log)), kExitArgument);
}

TEST(SweepCommandTest, ZeroEpsilonRowIsTheBaseline) {
  const fs::path data = MakeDataset("sweep_zero", 3);
  std::ostringstream log;
  RunOptions baseline = Options("evaluate", data, data.parent_path() / "base");
  baseline.protected_dir = data;
  ASSERT_TRUE(RunEvaluate(baseline, log).ok());
  const json base = ReadJson(baseline.out / kSummaryFile);

  RunOptions o = Options("sweep", data, data.parent_path() / "sweep");
  o.axis = "epsilon";
  o.epsilons = {0.0, 6.0 / 255};
  ASSERT_TRUE(RunSweep(o, log).ok());
  const json rows = ReadJson(o.out / kSummaryFile).at("rows");
  ASSERT_EQ(rows.size(), 2u);
  for (const char* column : {"joint", "nonjoint"}) {
    const json& cell = rows[0].at(column);
    EXPECT_EQ(cell.at("par"), base.at("par"));
    EXPECT_EQ(cell.at("npar"), base.at("npar"));
    EXPECT_EQ(cell.at("psnr"), "inf");
  }
  EXPECT_EQ(rows[1].at("label"), "6/255");
  const std::string csv = ReadText(o.out / "sweep_epsilon.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "epsilon,par_nonjoint,par_joint,npar_nonjoint,npar_joint,psnr_nonjoint,"
            "psnr_joint");
}

TEST(SweepCommandTest, LambdaAxisWritesOneRowPerPair) {
  const fs::path data = MakeDataset("sweep_lambda", 2);
  std::ostringstream log;
  RunOptions o = Options("sweep", data, data.parent_path() / "sweep");
  o.axis = "lambda";
  o.lambdas = {{1.0, 0.0}, {0.6, 0.4}};
  ASSERT_TRUE(RunSweep(o, log).ok());
  EXPECT_EQ(ReadJson(o.out / kSummaryFile).at("rows").size(), 2u);
  EXPECT_TRUE(fs::exists(o.out / "sweep_lambda.txt"));
}

// ---------------------------------------------------------------------------
// transfer

TEST(TransferCommandTest, SingleScorerMatchesItsOwnEvaluation) {
  const fs::path data = MakeDataset("transfer_one", 3);
  std::ostringstream log;
  RunOptions t = Options("transfer", data, data.parent_path() / "transfer");
  ASSERT_TRUE(RunTransfer(t, log).ok());
  const json matrices = ReadJson(t.out / kSummaryFile).at("matrices");
  ASSERT_EQ(matrices.at("selected").size(), 1u);
  ASSERT_EQ(matrices.at("selected")[0].size(), 1u);

  RunOptions p = Options("protect", data, data.parent_path() / "prot");
  ASSERT_TRUE(RunProtect(p, log).ok());
  RunOptions e = Options("evaluate", data, data.parent_path() / "eval");
  e.protected_dir = p.out;
  ASSERT_TRUE(RunEvaluate(e, log).ok());
  EXPECT_EQ(matrices.at("selected")[0][0],
            ReadJson(e.out / kSummaryFile).at("par"));
}

TEST(TransferCommandTest, CsvLabelsFollowScorerDescriptors) {
  const fs::path data = MakeDataset("transfer_two", 2);
  std::ostringstream log;
  RunOptions t = Options("transfer", data, data.parent_path() / "transfer");
  t.scorers = {"toy:1", "toy:2:16"};
  ASSERT_TRUE(RunTransfer(t, log).ok());
  for (const char* split : {"selected", "unselected", "paraphrased"}) {
    const std::string csv =
        ReadText(t.out / (std::string("transfer_") + split + ".csv"));
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "source\\target,toy:1:32,toy:2:16")
        << split;
    EXPECT_NE(csv.find("\ntoy:2:16,"), std::string::npos);
  }
  t.scorers = {"toy:1", "toy:1"};
  t.out = data.parent_path() / "dup";
  EXPECT_EQ(ExitCodeFor(RunTransfer(t, log)), kExitArgument);
}

}  // namespace
}  // namespace privshield::cli
