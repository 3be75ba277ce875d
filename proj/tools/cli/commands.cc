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

#include "commands.h"

#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <system_error>
#include <utility>

#include <nlohmann/json.hpp>

#include "absl/strings/ascii.h"
#include "absl/strings/match.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "privshield/dataset.h"
#include "privshield/image.h"
#include "privshield/image_io.h"
#include "privshield/metrics.h"
#include "privshield/optimizer.h"
#include "privshield/parallel.h"
#include "privshield/report.h"
#include "privshield/status.h"
#include "privshield/synthetic.h"
#include "privshield/templates.h"
#include "privshield/toy_scorer.h"

namespace privshield::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

constexpr char kManifestFormat[] = "privshield.run_manifest";
constexpr int kManifestVersion = 1;

// Non-finite values have no JSON number form.
json Metric(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return value;
}

json OptionalMetric(const std::optional<double>& value) {
  return value ? Metric(*value) : json(nullptr);
}

std::string UtcTimestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

// Files written by a command, with their hashes. The run manifest is
// deliberately not recorded because it carries a timestamp.
class ArtifactWriter {
 public:
  explicit ArtifactWriter(fs::path root) : root_(std::move(root)) {}

  absl::Status Write(const std::string& relative, absl::string_view bytes) {
    RETURN_IF_ERROR(WriteUnrecorded(relative, bytes));
    hashes_[relative] = Sha256Hex(bytes);
    return absl::OkStatus();
  }

  absl::Status WriteUnrecorded(const std::string& relative,
                               absl::string_view bytes) const {
    const fs::path path = root_ / relative;
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) {
      return DataError(absl::StrCat("cannot create ",
                                    path.parent_path().string(), ": ",
                                    ec.message()));
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    file.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    file.close();
    if (!file) return DataError(absl::StrCat("cannot write ", path.string()));
    return absl::OkStatus();
  }

  const std::map<std::string, std::string>& hashes() const { return hashes_; }

 private:
  fs::path root_;
  std::map<std::string, std::string> hashes_;
};

absl::Status PrepareOutput(const RunOptions& options) {
  if (options.out.empty()) return ArgumentError("--out is required");
  std::error_code ec;
  fs::create_directories(options.out, ec);
  if (ec) {
    return DataError(absl::StrCat("cannot create output directory ",
                                  options.out.string(), ": ", ec.message()));
  }
  // Outputs must never land inside an input directory.
  const fs::path out = fs::weakly_canonical(options.out);
  for (const fs::path& input : {options.dataset, options.protected_dir}) {
    if (input.empty()) continue;
    const fs::path in = fs::weakly_canonical(input);
    auto [in_end, out_it] = std::mismatch(in.begin(), in.end(), out.begin(),
                                          out.end());
    if (in_end == in.end()) {
      return ArgumentError(absl::StrCat("output directory ", out.string(),
                                        " lies inside input directory ",
                                        in.string()));
    }
  }
  return absl::OkStatus();
}

absl::Status FinishRun(const RunOptions& options, ArtifactWriter& writer,
                       json summary) {
  json artifacts = json::object();
  for (const auto& [path, hash] : writer.hashes()) artifacts[path] = hash;
  summary["artifacts"] = std::move(artifacts);
  RETURN_IF_ERROR(writer.WriteUnrecorded(kSummaryFile, summary.dump(2) + "\n"));
  return writer.WriteUnrecorded(
      kRunManifestFile, RunManifestJson(options, UtcTimestamp()));
}

// ---------------------------------------------------------------------------
// Dataset and splits

struct LoadedData {
  std::vector<ImageEntry> entries;
  std::vector<Image> images;
  std::optional<VariantTable> variants;
  std::vector<QuestionSplit> splits;
};

absl::StatusOr<LoadedData> LoadData(const RunOptions& options) {
  if (options.dataset.empty()) return ArgumentError("--dataset is required");
  LoadedData data;
  ASSIGN_OR_RETURN(data.entries, LoadDataset(options.dataset));
  if (data.entries.empty()) {
    return DataError(absl::StrCat("dataset ", options.dataset.string(),
                                  " has no entries"));
  }
  for (const ImageEntry& entry : data.entries) {
    ASSIGN_OR_RETURN(Image image,
                     LoadImage(options.dataset / entry.image_ref, entry.id));
    data.images.push_back(std::move(image));
  }
  const fs::path variants = options.dataset / kParaphraseFile;
  if (fs::exists(variants)) {
    ASSIGN_OR_RETURN(data.variants, LoadVariantTable(variants));
  }
  for (const ImageEntry& entry : data.entries) {
    ASSIGN_OR_RETURN(
        QuestionSplit split,
        SplitQuestions(entry, options.seed,
                       data.variants ? &*data.variants : nullptr));
    data.splits.push_back(std::move(split));
  }
  return data;
}

absl::StatusOr<std::vector<Question>> SplitQuestionsOfKind(
    const QuestionSplit& split, SplitSelector selector, QuestionKind kind) {
  const bool privacy = kind == QuestionKind::kPrivacy;
  switch (selector) {
    case SplitSelector::kSelected:
      return privacy ? split.selected_privacy : split.selected_utility;
    case SplitSelector::kUnselected:
      return privacy ? split.heldout_privacy : split.heldout_utility;
    case SplitSelector::kParaphrased: {
      if (!split.paraphrased) {
        return ConfigurationError(
            absl::StrCat("paraphrased split needs ", kParaphraseFile,
                         " in the dataset directory"));
      }
      std::vector<Question> out;
      for (const Question& q : *split.paraphrased) {
        if (q.kind == kind) out.push_back(q);
      }
      return out;
    }
  }
  return ArgumentError("unknown split");
}

// Answer rate of one question kind over a set of images. Absent when no
// image contributes a question. `include` filters images by index.
template <typename Include>
absl::StatusOr<std::optional<AnswerRateReport>> RateOf(
    const Scorer& scorer, const std::vector<Image>& images,
    const std::vector<QuestionSplit>& splits, SplitSelector selector,
    QuestionKind kind, const RefusalSet& refusal, int workers,
    Include include) {
  std::vector<std::vector<Question>> questions(images.size());
  std::vector<EvalPair> pairs;
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (!include(i)) continue;
    ASSIGN_OR_RETURN(questions[i],
                     SplitQuestionsOfKind(splits[i], selector, kind));
  }
  for (std::size_t i = 0; i < images.size(); ++i) {
    for (const Question& q : questions[i]) pairs.push_back({&images[i], &q});
  }
  if (pairs.empty()) return std::optional<AnswerRateReport>();
  ASSIGN_OR_RETURN(AnswerRateReport report,
                   AnswerRate(scorer, pairs, refusal, workers));
  return std::optional<AnswerRateReport>(std::move(report));
}

absl::StatusOr<std::optional<AnswerRateReport>> RateOf(
    const Scorer& scorer, const std::vector<Image>& images,
    const std::vector<QuestionSplit>& splits, SplitSelector selector,
    QuestionKind kind, const RefusalSet& refusal, int workers) {
  return RateOf(scorer, images, splits, selector, kind, refusal, workers,
                [](std::size_t) { return true; });
}

struct Quality {
  double psnr = 0.0;
  std::optional<double> ssim;
};

// Means over images. PSNR is +inf as soon as one pair is identical.
absl::StatusOr<Quality> MeanQuality(const std::vector<Image>& originals,
                                    const std::vector<Image>& modified) {
  Quality q;
  double psnr_sum = 0.0, ssim_sum = 0.0;
  bool ssim_defined = true;
  for (std::size_t i = 0; i < originals.size(); ++i) {
    ASSIGN_OR_RETURN(double psnr, Psnr(originals[i], modified[i]));
    psnr_sum += psnr;
    auto ssim = Ssim(originals[i], modified[i]);
    if (ssim.ok()) {
      ssim_sum += *ssim;
    } else if (IsArgumentError(ssim.status())) {
      ssim_defined = false;
    } else {
      return ssim.status();
    }
  }
  const auto n = static_cast<double>(originals.size());
  q.psnr = psnr_sum / n;
  if (ssim_defined) q.ssim = ssim_sum / n;
  return q;
}

ProtectionConfig MakeConfig(const RunOptions& options, RefusalSet refusal) {
  ProtectionConfig config = ProtectionConfig::Defaults(std::move(refusal));
  config.step_size = options.eta;
  config.epsilon = options.epsilon;
  config.max_iterations = options.iters;
  config.check_interval = options.check_interval;
  config.weights = {options.lambda_p, options.lambda_u};
  config.seed = options.seed;
  return config;
}

json ConfigJson(const ProtectionConfig& config,
                const std::vector<std::string>& refusal_terms) {
  json j;
  j["step_size"] = config.step_size;
  j["epsilon"] = config.epsilon;
  j["max_iterations"] = config.max_iterations;
  j["check_interval"] = config.check_interval;
  j["lambda_p"] = config.weights.lambda_p;
  j["lambda_u"] = config.weights.lambda_u;
  j["refusal_terms"] = refusal_terms;
  j["refusal_tokens"] = config.refusal.tokens();
  j["seed"] = config.seed;
  return j;
}

struct ProtectedBatch {
  std::vector<ProtectionResult> results;
  // The images as they are stored: 8-bit quantized.
  std::vector<Image> stored;
  // One progress record per early-stop check, grouped by image.
  std::vector<std::vector<std::string>> progress;
};

absl::StatusOr<ProtectedBatch> ProtectAll(const Scorer& scorer,
                                          const LoadedData& data,
                                          const ProtectionConfig& config,
                                          const std::string& run, int workers) {
  const std::size_t n = data.images.size();
  std::vector<absl::StatusOr<ProtectionResult>> results(
      n, absl::UnknownError("not run"));
  std::vector<std::vector<std::string>> progress(n);
  ParallelFor(n, workers, [&](std::size_t i) {
    const std::string& id = data.entries[i].id;
    auto observer = [&, i](const RefusalCheck& check, double privacy_loss,
                           double utility_loss) {
      json record;
      if (!run.empty()) record["run"] = run;
      record["image"] = id;
      record["step"] = check.step;
      record["privacy_loss"] = Metric(privacy_loss);
      record["utility_loss"] = Metric(utility_loss);
      record["privacy_refused"] = check.privacy_refused;
      record["utility_answered"] = check.utility_answered;
      progress[i].push_back(record.dump());
    };
    results[i] = Protect(scorer, data.images[i], data.splits[i].selected_privacy,
                         data.splits[i].selected_utility, config, observer);
  });
  ProtectedBatch batch;
  for (std::size_t i = 0; i < n; ++i) {
    if (!results[i].ok()) {
      const absl::Status& s = results[i].status();
      absl::Status annotated(s.code(), absl::StrCat("image ", data.entries[i].id,
                                                    ": ", s.message()));
      s.ForEachPayload([&](absl::string_view url, const absl::Cord& payload) {
        annotated.SetPayload(url, payload);
      });
      return annotated;
    }
    batch.stored.push_back(QuantizeTo8Bit(results[i]->protected_image)
                               .WithId(data.entries[i].id));
    batch.results.push_back(*std::move(results[i]));
  }
  batch.progress = std::move(progress);
  return batch;
}

std::string JoinProgress(const std::vector<std::vector<std::string>>& groups) {
  std::string out;
  for (const auto& group : groups) {
    for (const std::string& line : group) absl::StrAppend(&out, line, "\n");
  }
  return out;
}

double MeanIterations(const std::vector<ProtectionResult>& results) {
  double sum = 0.0;
  for (const auto& r : results) sum += r.iterations_run;
  return results.empty() ? 0.0 : sum / static_cast<double>(results.size());
}

double EarlyStopFraction(const std::vector<ProtectionResult>& results) {
  const auto stopped = std::count_if(results.begin(), results.end(),
                                     [](const auto& r) { return r.early_stopped; });
  return results.empty() ? 0.0
                         : static_cast<double>(stopped) /
                               static_cast<double>(results.size());
}

absl::StatusOr<std::unique_ptr<Scorer>> PrimaryScorer(const RunOptions& options) {
  if (options.scorers.empty()) return ArgumentError("--scorer is required");
  if (options.scorers.size() > 1) {
    return ArgumentError(absl::StrCat("command ", options.command,
                                      " takes exactly one --scorer"));
  }
  return ResolveScorer(options.scorers.front());
}

json ScorerJson(const Scorer& scorer, const std::string& spec) {
  json j;
  j["spec"] = spec;
  j["label"] = scorer.label();
  j["vocabulary"] = scorer.vocabulary();
  return j;
}

json RateJson(const std::optional<AnswerRateReport>& report) {
  if (!report) return nullptr;
  json j;
  j["rate"] = report->rate;
  j["answered"] = report->numerator;
  j["questions"] = report->denominator;
  if (!report->breakdown.empty()) {
    json by_attribute = json::object();
    for (const auto& [attribute, rate] : report->breakdown) {
      by_attribute[std::string(AttributeCode(attribute))] = rate;
    }
    j["by_attribute"] = std::move(by_attribute);
  }
  return j;
}

double RateOrZero(const std::optional<AnswerRateReport>& report) {
  return report ? report->rate : 0.0;
}

}  // namespace

// ---------------------------------------------------------------------------
// Parsing

int ExitCodeFor(const absl::Status& status) {
  if (status.ok()) return kExitOk;
  if (IsArgumentError(status)) return kExitArgument;
  if (IsDataError(status)) return kExitData;
  if (IsNumericError(status)) return kExitNumeric;
  return kExitOther;
}

absl::StatusOr<SplitSelector> ParseSplit(absl::string_view name) {
  if (name == "selected") return SplitSelector::kSelected;
  if (name == "unselected") return SplitSelector::kUnselected;
  if (name == "paraphrased") return SplitSelector::kParaphrased;
  return ArgumentError(absl::StrCat(
      "unknown split '", name, "'; expected selected, unselected or paraphrased"));
}

absl::string_view SplitName(SplitSelector split) {
  switch (split) {
    case SplitSelector::kSelected:
      return "selected";
    case SplitSelector::kUnselected:
      return "unselected";
    case SplitSelector::kParaphrased:
      return "paraphrased";
  }
  return "?";
}

absl::StatusOr<double> ParseNumber(absl::string_view text) {
  text = absl::StripAsciiWhitespace(text);
  const auto slash = text.find('/');
  double value = 0.0;
  if (slash == absl::string_view::npos) {
    if (!absl::SimpleAtod(text, &value) || !std::isfinite(value)) {
      return ArgumentError(absl::StrCat("not a number: '", text, "'"));
    }
    return value;
  }
  double num = 0.0, den = 0.0;
  if (!absl::SimpleAtod(text.substr(0, slash), &num) ||
      !absl::SimpleAtod(text.substr(slash + 1), &den) || den == 0.0 ||
      !std::isfinite(num) || !std::isfinite(den)) {
    return ArgumentError(absl::StrCat("not a fraction: '", text, "'"));
  }
  return num / den;
}

absl::StatusOr<std::vector<double>> ParseNumberList(absl::string_view text) {
  std::vector<double> values;
  for (absl::string_view item : absl::StrSplit(text, ',', absl::SkipWhitespace())) {
    ASSIGN_OR_RETURN(double v, ParseNumber(item));
    values.push_back(v);
  }
  return values;
}

absl::StatusOr<std::vector<LossWeights>> ParseLambdaList(
    absl::string_view text) {
  std::vector<LossWeights> values;
  for (absl::string_view item : absl::StrSplit(text, ',', absl::SkipWhitespace())) {
    std::vector<absl::string_view> parts = absl::StrSplit(item, ':');
    if (parts.size() != 2) {
      return ArgumentError(absl::StrCat("expected lambda_p:lambda_u, got '",
                                        absl::StripAsciiWhitespace(item), "'"));
    }
    LossWeights w;
    ASSIGN_OR_RETURN(w.lambda_p, ParseNumber(parts[0]));
    ASSIGN_OR_RETURN(w.lambda_u, ParseNumber(parts[1]));
    RETURN_IF_ERROR(w.Validate());
    values.push_back(w);
  }
  return values;
}

std::vector<std::string> ParseRefusalTerms(absl::string_view text) {
  std::vector<std::string> terms;
  for (absl::string_view item : absl::StrSplit(text, ',')) {
    item = absl::StripAsciiWhitespace(item);
    if (!item.empty()) terms.emplace_back(item);
  }
  return terms;
}

absl::StatusOr<std::unique_ptr<Scorer>> ResolveScorer(absl::string_view spec) {
  if (absl::ConsumePrefix(&spec, "toy:")) {
    std::vector<absl::string_view> parts = absl::StrSplit(spec, ':');
    std::uint64_t seed = 0;
    int dim = kDefaultEmbeddingDim;
    if (parts.empty() || parts.size() > 2 || !absl::SimpleAtoi(parts[0], &seed)) {
      return ArgumentError(absl::StrCat("bad toy scorer spec 'toy:", spec,
                                        "'; expected toy:<seed>[:dim]"));
    }
    if (parts.size() == 2 && (!absl::SimpleAtoi(parts[1], &dim) || dim <= 0)) {
      return ArgumentError(absl::StrCat("bad embedding dimension '", parts[1], "'"));
    }
    ASSIGN_OR_RETURN(auto scorer, MakeToyScorer(seed, DefaultToyVocabulary(), dim));
    return std::unique_ptr<Scorer>(std::move(scorer));
  }
  if (absl::ConsumePrefix(&spec, "file:")) {
    if (spec.empty()) return ArgumentError("file: scorer spec without a path");
    ASSIGN_OR_RETURN(auto scorer, ToyScorer::Load(fs::path(std::string(spec))));
    return std::unique_ptr<Scorer>(std::move(scorer));
  }
  if (absl::StartsWith(spec, "ext:")) {
    return ConfigurationError(absl::StrCat(
        "external scorer '", spec,
        "': no external backend client is available in this build"));
  }
  return ArgumentError(absl::StrCat("unknown scorer spec '", spec,
                                    "'; expected toy:<seed>[:dim] or file:<path>"));
}

std::string Sha256Hex(absl::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Run manifest

std::string RunManifestJson(const RunOptions& o, absl::string_view timestamp) {
  json j;
  j["format"] = kManifestFormat;
  j["version"] = kManifestVersion;
  j["command"] = o.command;
  j["timestamp"] = std::string(timestamp);
  j["dataset"] = o.dataset.string();
  j["scorers"] = o.scorers;
  j["out"] = o.out.string();
  json config;
  config["eta"] = o.eta;
  config["epsilon"] = o.epsilon;
  config["iters"] = o.iters;
  config["check_interval"] = o.check_interval;
  config["lambda_p"] = o.lambda_p;
  config["lambda_u"] = o.lambda_u;
  config["refusal_terms"] = o.refusal_terms;
  config["seed"] = o.seed;
  j["config"] = std::move(config);
  j["split"] = std::string(SplitName(o.split));
  j["workers"] = o.workers;
  if (o.command == "evaluate") {
    j["protected"] = o.protected_dir.string();
    j["method"] = o.method;
  }
  if (o.command == "sweep") {
    j["axis"] = o.axis;
    j["epsilons"] = o.epsilons;
    json lambdas = json::array();
    for (const LossWeights& w : o.lambdas) {
      lambdas.push_back(json::array({w.lambda_p, w.lambda_u}));
    }
    j["lambdas"] = std::move(lambdas);
  }
  return j.dump(2) + "\n";
}

absl::StatusOr<RunOptions> ParseRunManifest(absl::string_view text) {
  json j = json::parse(text.begin(), text.end(), nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    return DataError("run manifest is not a JSON object");
  }
  try {
    if (j.at("format").get<std::string>() != kManifestFormat) {
      return DataError("not a privshield run manifest");
    }
    if (j.at("version").get<int>() != kManifestVersion) {
      return DataError(absl::StrCat("unsupported run manifest version ",
                                    j.at("version").dump()));
    }
    RunOptions o;
    o.command = j.at("command").get<std::string>();
    o.dataset = j.at("dataset").get<std::string>();
    o.scorers = j.at("scorers").get<std::vector<std::string>>();
    o.out = j.at("out").get<std::string>();
    const json& c = j.at("config");
    o.eta = c.at("eta").get<double>();
    o.epsilon = c.at("epsilon").get<double>();
    o.iters = c.at("iters").get<int>();
    o.check_interval = c.at("check_interval").get<int>();
    o.lambda_p = c.at("lambda_p").get<double>();
    o.lambda_u = c.at("lambda_u").get<double>();
    o.refusal_terms = c.at("refusal_terms").get<std::vector<std::string>>();
    o.seed = c.at("seed").get<std::uint64_t>();
    ASSIGN_OR_RETURN(o.split, ParseSplit(j.at("split").get<std::string>()));
    o.workers = j.at("workers").get<int>();
    if (j.contains("protected")) o.protected_dir = j["protected"].get<std::string>();
    if (j.contains("method")) o.method = j["method"].get<std::string>();
    if (j.contains("axis")) o.axis = j["axis"].get<std::string>();
    if (j.contains("epsilons")) o.epsilons = j["epsilons"].get<std::vector<double>>();
    if (j.contains("lambdas")) {
      for (const json& pair : j["lambdas"]) {
        o.lambdas.push_back({pair.at(0).get<double>(), pair.at(1).get<double>()});
      }
    }
    return o;
  } catch (const json::exception& e) {
    return DataError(absl::StrCat("malformed run manifest: ", e.what()));
  }
}

// ---------------------------------------------------------------------------
// protect

absl::Status RunProtect(const RunOptions& options, std::ostream& log) {
  ASSIGN_OR_RETURN(std::unique_ptr<Scorer> scorer, PrimaryScorer(options));
  ASSIGN_OR_RETURN(RefusalSet refusal,
                   RefusalSet::FromTerms(*scorer, options.refusal_terms));
  const ProtectionConfig config = MakeConfig(options, refusal);
  RETURN_IF_ERROR(config.Validate());
  ASSIGN_OR_RETURN(LoadedData data, LoadData(options));
  RETURN_IF_ERROR(PrepareOutput(options));

  ASSIGN_OR_RETURN(ProtectedBatch batch,
                   ProtectAll(*scorer, data, config, "", options.workers));

  ArtifactWriter writer(options.out);
  const json config_json = ConfigJson(config, options.refusal_terms);
  double psnr_sum = 0.0, ssim_sum = 0.0;
  bool ssim_defined = true;
  for (std::size_t i = 0; i < batch.results.size(); ++i) {
    const ImageEntry& entry = data.entries[i];
    const ProtectionResult& r = batch.results[i];
    const Image& stored = batch.stored[i];
    ASSIGN_OR_RETURN(std::vector<std::uint8_t> png, EncodePng(stored));
    RETURN_IF_ERROR(writer.Write(
        absl::StrCat("images/", entry.id, ".png"),
        absl::string_view(reinterpret_cast<const char*>(png.data()), png.size())));

    ASSIGN_OR_RETURN(double psnr, Psnr(data.images[i], stored));
    auto ssim = Ssim(data.images[i], stored);
    psnr_sum += psnr;
    if (ssim.ok()) {
      ssim_sum += *ssim;
    } else {
      ssim_defined = false;
    }

    json sidecar;
    sidecar["id"] = entry.id;
    sidecar["scorer"] = scorer->label();
    sidecar["config"] = config_json;
    sidecar["iterations_run"] = r.iterations_run;
    sidecar["early_stopped"] = r.early_stopped;
    sidecar["final_privacy_loss"] = Metric(r.final_privacy_loss);
    sidecar["final_utility_loss"] = Metric(r.final_utility_loss);
    sidecar["psnr"] = Metric(psnr);
    sidecar["ssim"] = ssim.ok() ? json(*ssim) : json(nullptr);
    json trace = json::array();
    for (const RefusalCheck& check : r.refusal_trace) {
      trace.push_back({{"step", check.step},
                       {"privacy_refused", check.privacy_refused},
                       {"utility_answered", check.utility_answered}});
    }
    sidecar["refusal_trace"] = std::move(trace);
    json privacy = json::array(), utility = json::array();
    for (const Question& q : data.splits[i].selected_privacy) privacy.push_back(q.text);
    for (const Question& q : data.splits[i].selected_utility) utility.push_back(q.text);
    sidecar["privacy_questions"] = std::move(privacy);
    sidecar["utility_questions"] = std::move(utility);
    RETURN_IF_ERROR(writer.Write(absl::StrCat("sidecars/", entry.id, ".json"),
                                 sidecar.dump(2) + "\n"));
  }
  RETURN_IF_ERROR(writer.Write("progress.jsonl", JoinProgress(batch.progress)));

  const auto n = static_cast<double>(batch.results.size());
  json summary;
  summary["command"] = "protect";
  summary["scorer"] = ScorerJson(*scorer, options.scorers.front());
  summary["config"] = config_json;
  summary["images"] = batch.results.size();
  summary["mean_iterations"] = MeanIterations(batch.results);
  summary["early_stop_fraction"] = EarlyStopFraction(batch.results);
  summary["mean_psnr"] = Metric(psnr_sum / n);
  summary["mean_ssim"] = ssim_defined ? json(ssim_sum / n) : json(nullptr);
  RETURN_IF_ERROR(FinishRun(options, writer, std::move(summary)));

  log << "protected " << batch.results.size() << " images with "
      << scorer->label() << ": mean iterations " << MeanIterations(batch.results)
      << ", early-stop fraction " << EarlyStopFraction(batch.results) << "\n";
  return absl::OkStatus();
}

// ---------------------------------------------------------------------------
// evaluate

namespace {

absl::StatusOr<std::vector<Image>> LoadProtectedImages(
    const fs::path& dir, const std::vector<ImageEntry>& entries) {
  std::set<std::string> expected;
  std::vector<Image> images;
  for (const ImageEntry& entry : entries) {
    expected.insert(entry.id + ".png");
    fs::path path = dir / "images" / (entry.id + ".png");
    if (!fs::exists(path)) path = dir / entry.image_ref;
    if (!fs::exists(path)) {
      return DataError(absl::StrCat("id mismatch: no protected image for '",
                                    entry.id, "' in ", dir.string()));
    }
    ASSIGN_OR_RETURN(Image image, LoadImage(path, entry.id));
    images.push_back(std::move(image));
  }
  const fs::path image_dir = dir / "images";
  if (fs::is_directory(image_dir)) {
    std::vector<std::string> extra;
    for (const auto& file : fs::directory_iterator(image_dir)) {
      const std::string name = file.path().filename().string();
      if (file.path().extension() == ".png" && !expected.count(name)) {
        extra.push_back(name);
      }
    }
    std::sort(extra.begin(), extra.end());
    if (!extra.empty()) {
      return DataError(absl::StrCat("id mismatch: ", image_dir.string(),
                                    " has images not in the dataset: ",
                                    absl::StrJoin(extra, ", ")));
    }
  }
  return images;
}

struct PersonRates {
  std::optional<AnswerRateReport> without_person;
  std::optional<AnswerRateReport> with_person;
};

absl::StatusOr<PersonRates> PrivacyRatesByPerson(
    const Scorer& scorer, const std::vector<Image>& images,
    const LoadedData& data, SplitSelector split, const RefusalSet& refusal,
    int workers) {
  PersonRates rates;
  for (bool person : {false, true}) {
    ASSIGN_OR_RETURN(
        auto report,
        RateOf(scorer, images, data.splits, split, QuestionKind::kPrivacy,
               refusal, workers,
               [&](std::size_t i) { return data.entries[i].has_person == person; }));
    (person ? rates.with_person : rates.without_person) = std::move(report);
  }
  return rates;
}

std::optional<double> AttributeRate(const std::optional<AnswerRateReport>& r,
                                    Attribute a) {
  if (!r) return std::nullopt;
  auto it = r->breakdown.find(a);
  if (it == r->breakdown.end()) return std::nullopt;
  return it->second;
}

}  // namespace

absl::Status RunEvaluate(const RunOptions& options, std::ostream& log) {
  if (options.protected_dir.empty()) return ArgumentError("--protected is required");
  ASSIGN_OR_RETURN(std::unique_ptr<Scorer> scorer, PrimaryScorer(options));
  ASSIGN_OR_RETURN(RefusalSet refusal,
                   RefusalSet::FromTerms(*scorer, options.refusal_terms));
  ASSIGN_OR_RETURN(LoadedData data, LoadData(options));
  ASSIGN_OR_RETURN(std::vector<Image> protected_images,
                   LoadProtectedImages(options.protected_dir, data.entries));
  for (std::size_t i = 0; i < data.images.size(); ++i) {
    if (data.images[i].shape() != protected_images[i].shape()) {
      return DataError(absl::StrCat("image '", data.entries[i].id,
                                    "': protected shape ",
                                    ToString(protected_images[i].shape()),
                                    " differs from original ",
                                    ToString(data.images[i].shape())));
    }
  }
  RETURN_IF_ERROR(PrepareOutput(options));

  const int w = options.workers;
  const SplitSelector split = options.split;
  ASSIGN_OR_RETURN(auto par_ori, RateOf(*scorer, data.images, data.splits, split,
                                        QuestionKind::kPrivacy, refusal, w));
  ASSIGN_OR_RETURN(auto npar_ori, RateOf(*scorer, data.images, data.splits, split,
                                         QuestionKind::kNonPrivacy, refusal, w));
  ASSIGN_OR_RETURN(auto par_pro, RateOf(*scorer, protected_images, data.splits,
                                        split, QuestionKind::kPrivacy, refusal, w));
  ASSIGN_OR_RETURN(auto npar_pro,
                   RateOf(*scorer, protected_images, data.splits, split,
                          QuestionKind::kNonPrivacy, refusal, w));
  ASSIGN_OR_RETURN(Quality identity, MeanQuality(data.images, data.images));
  ASSIGN_OR_RETURN(Quality quality, MeanQuality(data.images, protected_images));
  ASSIGN_OR_RETURN(PersonRates ori, PrivacyRatesByPerson(*scorer, data.images, data,
                                                         split, refusal, w));
  ASSIGN_OR_RETURN(PersonRates pro, PrivacyRatesByPerson(*scorer, protected_images,
                                                         data, split, refusal, w));

  const std::vector<MethodRow> method_rows = {
      {"No Protection", RateOrZero(par_ori), RateOrZero(npar_ori), identity.psnr,
       identity.ssim},
      {options.method, RateOrZero(par_pro), RateOrZero(npar_pro), quality.psnr,
       quality.ssim},
  };
  std::vector<AttributeRow> attribute_rows;
  json attributes = json::array();
  for (Attribute a : kAllAttributes) {
    AttributeRow row;
    row.attribute = a;
    row.ori_without = AttributeRate(ori.without_person, a);
    row.pro_without = AttributeRate(pro.without_person, a);
    row.ori_with = AttributeRate(ori.with_person, a);
    row.pro_with = AttributeRate(pro.with_person, a);
    auto reduction = [](std::optional<double> o, std::optional<double> p) {
      return o && p ? RelativeReduction(*o, *p) : std::nullopt;
    };
    attributes.push_back(
        {{"attribute", std::string(AttributeCode(a))},
         {"without_person",
          {{"ori", OptionalMetric(row.ori_without)},
           {"pro", OptionalMetric(row.pro_without)},
           {"relative_reduction",
            OptionalMetric(reduction(row.ori_without, row.pro_without))}}},
         {"with_person",
          {{"ori", OptionalMetric(row.ori_with)},
           {"pro", OptionalMetric(row.pro_with)},
           {"relative_reduction",
            OptionalMetric(reduction(row.ori_with, row.pro_with))}}}});
    attribute_rows.push_back(row);
  }

  json report;
  report["scorer"] = ScorerJson(*scorer, options.scorers.front());
  report["split"] = std::string(SplitName(split));
  report["images"] = data.images.size();
  json methods = json::array();
  for (const MethodRow& row : method_rows) {
    methods.push_back({{"method", row.method},
                       {"par", row.par},
                       {"npar", row.npar},
                       {"psnr", Metric(row.psnr)},
                       {"ssim", OptionalMetric(row.ssim)}});
  }
  report["methods"] = std::move(methods);
  report["original"] = {{"par", RateJson(par_ori)}, {"npar", RateJson(npar_ori)}};
  report["protected"] = {{"par", RateJson(par_pro)}, {"npar", RateJson(npar_pro)}};
  report["attributes"] = std::move(attributes);

  ArtifactWriter writer(options.out);
  const std::string method_table = MethodTableText(method_rows);
  const std::string attribute_table = AttributeTableText(attribute_rows);
  RETURN_IF_ERROR(writer.Write("report.json", report.dump(2) + "\n"));
  RETURN_IF_ERROR(writer.Write("methods.txt", method_table));
  RETURN_IF_ERROR(writer.Write("attributes.txt", attribute_table));

  json summary;
  summary["command"] = "evaluate";
  summary["split"] = std::string(SplitName(split));
  summary["par"] = RateOrZero(par_pro);
  summary["npar"] = RateOrZero(npar_pro);
  summary["psnr"] = Metric(quality.psnr);
  summary["ssim"] = OptionalMetric(quality.ssim);
  RETURN_IF_ERROR(FinishRun(options, writer, std::move(summary)));
  log << method_table << "\n" << attribute_table;
  return absl::OkStatus();
}

// ---------------------------------------------------------------------------
// sweep

namespace {

struct SweepCell {
  double par = 0.0;
  double npar = 0.0;
  double psnr = 0.0;
  std::optional<double> ssim;
  double mean_iterations = 0.0;
  double early_stop_fraction = 0.0;
};

absl::StatusOr<SweepCell> ProtectAndScore(const Scorer& scorer,
                                          const LoadedData& data,
                                          const ProtectionConfig& config,
                                          const RunOptions& options,
                                          const std::string& run,
                                          std::vector<std::string>& progress) {
  RETURN_IF_ERROR(config.Validate());
  ASSIGN_OR_RETURN(ProtectedBatch batch,
                   ProtectAll(scorer, data, config, run, options.workers));
  for (auto& group : batch.progress) {
    for (auto& line : group) progress.push_back(std::move(line));
  }
  SweepCell cell;
  ASSIGN_OR_RETURN(auto par,
                   RateOf(scorer, batch.stored, data.splits, options.split,
                          QuestionKind::kPrivacy, config.refusal, options.workers));
  ASSIGN_OR_RETURN(auto npar,
                   RateOf(scorer, batch.stored, data.splits, options.split,
                          QuestionKind::kNonPrivacy, config.refusal,
                          options.workers));
  ASSIGN_OR_RETURN(Quality quality, MeanQuality(data.images, batch.stored));
  cell.par = RateOrZero(par);
  cell.npar = RateOrZero(npar);
  cell.psnr = quality.psnr;
  cell.ssim = quality.ssim;
  cell.mean_iterations = MeanIterations(batch.results);
  cell.early_stop_fraction = EarlyStopFraction(batch.results);
  return cell;
}

json CellJson(const SweepCell& c) {
  return {{"par", c.par},
          {"npar", c.npar},
          {"psnr", Metric(c.psnr)},
          {"ssim", OptionalMetric(c.ssim)},
          {"mean_iterations", c.mean_iterations},
          {"early_stop_fraction", c.early_stop_fraction}};
}

// "6/255" for multiples of 1/255 (up to rounding), the decimal otherwise.
std::string EpsilonLabel(double epsilon) {
  const double scaled = epsilon * 255.0;
  const double rounded = std::round(scaled);
  if (std::abs(scaled - rounded) < 1e-9) {
    return absl::StrCat(static_cast<long long>(rounded), "/255");
  }
  return absl::StrCat(epsilon);
}

std::string CsvNumber(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return absl::StrCat(v);
}

}  // namespace

absl::Status RunSweep(const RunOptions& options, std::ostream& log) {
  if (options.axis != "epsilon" && options.axis != "lambda") {
    return ArgumentError(absl::StrCat("invalid sweep axis '", options.axis,
                                      "'; expected epsilon or lambda"));
  }
  const bool epsilon_axis = options.axis == "epsilon";
  const std::size_t count =
      epsilon_axis ? options.epsilons.size() : options.lambdas.size();
  if (count < 2) {
    return ArgumentError(absl::StrCat("a ", options.axis,
                                      " sweep needs at least 2 values, got ",
                                      count));
  }
  ASSIGN_OR_RETURN(std::unique_ptr<Scorer> scorer, PrimaryScorer(options));
  ASSIGN_OR_RETURN(RefusalSet refusal,
                   RefusalSet::FromTerms(*scorer, options.refusal_terms));
  ASSIGN_OR_RETURN(LoadedData data, LoadData(options));
  RETURN_IF_ERROR(PrepareOutput(options));

  std::vector<std::string> progress;
  json rows = json::array();
  std::vector<std::vector<std::string>> text_rows;
  std::string csv;
  if (epsilon_axis) {
    text_rows.push_back({"eps", "PAR N-Joint", "PAR Joint", "NPAR N-Joint",
                         "NPAR Joint", "PSNR N-Joint", "PSNR Joint"});
    csv = "epsilon,par_nonjoint,par_joint,npar_nonjoint,npar_joint,"
          "psnr_nonjoint,psnr_joint\n";
    for (double epsilon : options.epsilons) {
      ProtectionConfig joint = MakeConfig(options, refusal);
      joint.epsilon = epsilon;
      ProtectionConfig nonjoint = joint;
      nonjoint.weights = {1.0, 0.0};
      const std::string label = EpsilonLabel(epsilon);
      ASSIGN_OR_RETURN(SweepCell nj, ProtectAndScore(*scorer, data, nonjoint,
                                                     options, "eps=" + label +
                                                     " nonjoint", progress));
      ASSIGN_OR_RETURN(SweepCell j, ProtectAndScore(*scorer, data, joint, options,
                                                    "eps=" + label + " joint",
                                                    progress));
      rows.push_back({{"epsilon", epsilon},
                      {"label", label},
                      {"nonjoint", CellJson(nj)},
                      {"joint", CellJson(j)}});
      text_rows.push_back({label, FormatPercent(nj.par), FormatPercent(j.par),
                           FormatPercent(nj.npar), FormatPercent(j.npar),
                           FormatPsnr(nj.psnr), FormatPsnr(j.psnr)});
      absl::StrAppend(&csv, CsvNumber(epsilon), ",", CsvNumber(nj.par), ",",
                      CsvNumber(j.par), ",", CsvNumber(nj.npar), ",",
                      CsvNumber(j.npar), ",", CsvNumber(nj.psnr), ",",
                      CsvNumber(j.psnr), "\n");
    }
  } else {
    text_rows.push_back({"(lambda_p, lambda_u)", "PAR", "NPAR", "PSNR"});
    csv = "lambda_p,lambda_u,par,npar,psnr\n";
    for (const LossWeights& weights : options.lambdas) {
      ProtectionConfig config = MakeConfig(options, refusal);
      config.weights = weights;
      const std::string label =
          absl::StrCat("(", weights.lambda_p, ", ", weights.lambda_u, ")");
      ASSIGN_OR_RETURN(SweepCell cell, ProtectAndScore(*scorer, data, config,
                                                       options, "lambda=" + label,
                                                       progress));
      rows.push_back({{"lambda_p", weights.lambda_p},
                      {"lambda_u", weights.lambda_u},
                      {"result", CellJson(cell)}});
      text_rows.push_back({label, FormatPercent(cell.par),
                           FormatPercent(cell.npar), FormatPsnr(cell.psnr)});
      absl::StrAppend(&csv, CsvNumber(weights.lambda_p), ",",
                      CsvNumber(weights.lambda_u), ",", CsvNumber(cell.par), ",",
                      CsvNumber(cell.npar), ",", CsvNumber(cell.psnr), "\n");
    }
  }

  const std::string stem = absl::StrCat("sweep_", options.axis);
  const std::string table = AlignColumns(text_rows);
  ArtifactWriter writer(options.out);
  RETURN_IF_ERROR(writer.Write(stem + ".csv", csv));
  RETURN_IF_ERROR(writer.Write(stem + ".txt", table));
  std::string progress_text;
  for (const std::string& line : progress) absl::StrAppend(&progress_text, line, "\n");
  RETURN_IF_ERROR(writer.Write("progress.jsonl", progress_text));

  json summary;
  summary["command"] = "sweep";
  summary["axis"] = options.axis;
  summary["split"] = std::string(SplitName(options.split));
  summary["scorer"] = ScorerJson(*scorer, options.scorers.front());
  summary["rows"] = std::move(rows);
  RETURN_IF_ERROR(FinishRun(options, writer, std::move(summary)));
  log << table;
  return absl::OkStatus();
}

// ---------------------------------------------------------------------------
// transfer

absl::Status RunTransfer(const RunOptions& options, std::ostream& log) {
  if (options.scorers.empty()) return ArgumentError("--scorer is required");
  std::vector<std::unique_ptr<Scorer>> owned;
  std::vector<const Scorer*> scorers;
  std::set<std::string> labels;
  for (const std::string& spec : options.scorers) {
    ASSIGN_OR_RETURN(std::unique_ptr<Scorer> scorer, ResolveScorer(spec));
    if (!labels.insert(scorer->label()).second) {
      return ArgumentError(absl::StrCat("scorer ", scorer->label(),
                                        " is listed twice"));
    }
    scorers.push_back(scorer.get());
    owned.push_back(std::move(scorer));
  }
  ASSIGN_OR_RETURN(LoadedData data, LoadData(options));
  RETURN_IF_ERROR(PrepareOutput(options));

  ArtifactWriter writer(options.out);
  std::vector<std::string> progress;
  std::vector<ProtectedBatch> batches;
  json sources = json::array();
  absl::Status failure;
  for (std::size_t s = 0; s < scorers.size(); ++s) {
    auto refusal = RefusalSet::FromTerms(*scorers[s], options.refusal_terms);
    if (!refusal.ok()) {
      failure = refusal.status();
      break;
    }
    ProtectionConfig config = MakeConfig(options, *refusal);
    if (auto st = config.Validate(); !st.ok()) {
      failure = st;
      break;
    }
    auto batch = ProtectAll(*scorers[s], data, config,
                            "source=" + scorers[s]->label(), options.workers);
    if (!batch.ok()) {
      failure = batch.status();
      break;
    }
    for (auto& group : batch->progress) {
      for (auto& line : group) progress.push_back(line);
    }
    sources.push_back({{"scorer", ScorerJson(*scorers[s], options.scorers[s])},
                       {"mean_iterations", MeanIterations(batch->results)},
                       {"early_stop_fraction", EarlyStopFraction(batch->results)}});
    batches.push_back(*std::move(batch));
  }

  json summary;
  summary["command"] = "transfer";
  summary["sources"] = std::move(sources);
  if (!failure.ok()) {
    summary["partial"] = true;
    summary["error"] = std::string(failure.message());
    RETURN_IF_ERROR(FinishRun(options, writer, std::move(summary)));
    return failure;
  }

  std::vector<SplitSelector> splits = {SplitSelector::kSelected,
                                       SplitSelector::kUnselected};
  if (data.variants) splits.push_back(SplitSelector::kParaphrased);
  json matrices = json::object();
  std::string text;
  for (SplitSelector split : splits) {
    // Privacy questions of this split, per image; shared by all sources.
    std::vector<std::vector<Question>> questions(data.images.size());
    for (std::size_t i = 0; i < data.images.size(); ++i) {
      ASSIGN_OR_RETURN(questions[i], SplitQuestionsOfKind(
                                         data.splits[i], split,
                                         QuestionKind::kPrivacy));
    }
    std::map<std::string, std::vector<EvalPair>> sets;
    for (std::size_t s = 0; s < scorers.size(); ++s) {
      std::vector<EvalPair>& pairs = sets[scorers[s]->label()];
      for (std::size_t i = 0; i < data.images.size(); ++i) {
        for (const Question& q : questions[i]) {
          pairs.push_back({&batches[s].stored[i], &q});
        }
      }
    }
    if (sets.begin()->second.empty()) {
      matrices[std::string(SplitName(split))] = nullptr;
      continue;
    }
    ASSIGN_OR_RETURN(TransferMatrix matrix,
                     ComputeTransferMatrix(scorers, sets, options.refusal_terms,
                                           options.workers));
    const std::string csv = TransferMatrixCsv(matrix);
    RETURN_IF_ERROR(writer.Write(
        absl::StrCat("transfer_", SplitName(split), ".csv"), csv));
    matrices[std::string(SplitName(split))] = matrix.entries;
    absl::StrAppend(&text, SplitName(split), "\n", csv, "\n");
  }
  std::string progress_text;
  for (const std::string& line : progress) absl::StrAppend(&progress_text, line, "\n");
  RETURN_IF_ERROR(writer.Write("progress.jsonl", progress_text));

  summary["partial"] = false;
  summary["matrices"] = std::move(matrices);
  RETURN_IF_ERROR(FinishRun(options, writer, std::move(summary)));
  log << text;
  return absl::OkStatus();
}

// ---------------------------------------------------------------------------
// Dispatch

absl::Status RunCommand(const RunOptions& options, std::ostream& log) {
  if (options.workers < 1) return ArgumentError("--workers must be at least 1");
  if (options.command == "protect") return RunProtect(options, log);
  if (options.command == "evaluate") return RunEvaluate(options, log);
  if (options.command == "sweep") return RunSweep(options, log);
  if (options.command == "transfer") return RunTransfer(options, log);
  return ArgumentError(absl::StrCat("unknown command '", options.command, "'"));
}

absl::Status Rerun(const fs::path& manifest, const fs::path& out, int workers,
                   std::ostream& log) {
  std::ifstream file(manifest, std::ios::binary);
  if (!file) {
    return absl::NotFoundError(absl::StrCat("cannot read ", manifest.string()));
  }
  std::stringstream buffer;
  buffer << file.rdbuf();
  ASSIGN_OR_RETURN(RunOptions options, ParseRunManifest(buffer.str()));
  if (!out.empty()) options.out = out;
  if (workers > 0) options.workers = workers;
  return RunCommand(options, log);
}

absl::Status RunSynth(const fs::path& out, int count, int size,
                      std::uint64_t seed, const fs::path& templates_path,
                      std::ostream& log) {
  if (out.empty()) return ArgumentError("--out is required");
  ASSIGN_OR_RETURN(TemplateTable templates, TemplateTable::Load(templates_path));
  SyntheticOptions synth;
  synth.count = count;
  synth.size = size;
  synth.seed = seed;
  ASSIGN_OR_RETURN(SyntheticDataset dataset,
                   GenerateSyntheticDataset(synth, templates));
  RETURN_IF_ERROR(WriteDataset(out, dataset));
  log << "wrote " << dataset.entries.size() << " synthetic entries to "
      << out.string() << "\n";
  return absl::OkStatus();
}

absl::Status RunStats(const fs::path& dataset, const fs::path& out,
                      std::ostream& log) {
  if (dataset.empty()) return ArgumentError("--dataset is required");
  ASSIGN_OR_RETURN(std::vector<ImageEntry> entries, LoadDataset(dataset));
  const std::string csv = StatisticsCsv(ComputeStatistics(entries));
  if (!out.empty()) {
    std::ofstream file(out, std::ios::binary | std::ios::trunc);
    file << csv;
    file.close();
    if (!file) return DataError(absl::StrCat("cannot write ", out.string()));
  }
  log << csv;
  return absl::OkStatus();
}

absl::Status RunMakeScorer(std::uint64_t seed, int dim, const fs::path& out,
                           std::ostream& log) {
  if (out.empty()) return ArgumentError("--out is required");
  ASSIGN_OR_RETURN(auto scorer, MakeToyScorer(seed, DefaultToyVocabulary(), dim));
  RETURN_IF_ERROR(scorer->Save(out));
  log << "saved " << scorer->label() << " to " << out.string() << "\n";
  return absl::OkStatus();
}

}  // namespace privshield::cli
