/*
 * Copyright 2026 The imbal Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


// Command line front end: oversampling, cWGAN training and sampling, the
// benchmark protocol, reports and ablations.
//
// Exit codes: 0 success, 1 user error (bad arguments or configuration),
// 2 internal error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "imbal/bench/ablation.h"
#include "imbal/bench/config.h"
#include "imbal/bench/report.h"
#include "imbal/bench/runner.h"
#include "imbal/bench/toy_data.h"
#include "imbal/gan/checkpoint.h"
#include "imbal/gan/sampling.h"
#include "imbal/gan/trainer.h"
#include "imbal/quality/gen_quality.h"
#include "imbal/resample/oversample.h"

namespace {

namespace fs = std::filesystem;
using namespace imbal;

constexpr int kUserError = 1;
constexpr int kInternalError = 2;

// Marks failures caused by the invocation rather than by the program.
struct UserError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void WriteJsonFile(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw UserError("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

gan::GanConfig LoadGanConfig(const std::string& path) {
  if (path.empty()) return {};
  std::ifstream in(path);
  if (!in) throw UserError("cannot open GAN config '" + path + "'");
  nlohmann::json j;
  in >> j;
  return gan::GanConfig::FromJson(j);
}

struct GanFlags {
  std::string config_path;
  std::optional<int> epochs;
  std::vector<std::string> drop;

  void Register(CLI::App* cmd) {
    cmd->add_option("--gan-config", config_path, "GAN hyperparameters (JSON)");
    cmd->add_option("--epochs", epochs, "Override the number of training epochs");
    cmd->add_option("--drop", drop, "Ablate an element: wgan_gp, ac or categorical");
  }

  gan::GanConfig Resolve() const {
    gan::GanConfig config = LoadGanConfig(config_path);
    if (epochs) config.epochs = *epochs;
    bench::Ablation ablation;
    for (const auto& d : drop) ablation.Drop(d);
    config = ablation.Apply(config);
    config.Validate();
    return config;
  }
};

struct LoadedData {
  tabular::DatasetSchema schema;
  tabular::TabularFrame frame;
  std::shared_ptr<const tabular::PreprocessorModel> model;
  tabular::EncodedMatrix encoded;
};

LoadedData LoadForModelling(const std::string& schema_path) {
  LoadedData d;
  d.schema = tabular::LoadSchemaFile(schema_path);
  d.frame = tabular::LoadDataset(d.schema);
  d.model = std::make_shared<tabular::PreprocessorModel>(
      tabular::PreprocessorModel::Fit(d.frame, d.schema));
  d.encoded = d.model->Transform(d.frame);
  return d;
}

tabular::EncodedMatrix TailRows(const tabular::EncodedMatrix& m, size_t from) {
  std::vector<size_t> rows;
  for (size_t i = from; i < m.NumRows(); ++i) rows.push_back(i);
  return m.SelectRows(rows);
}

nlohmann::json QualityReport(const LoadedData& d, const tabular::EncodedMatrix& synthetic,
                             uint64_t seed) {
  std::vector<size_t> minority;
  for (size_t i = 0; i < d.encoded.labels.size(); ++i) {
    if (d.encoded.labels[i] == 1) minority.push_back(i);
  }
  const tabular::EncodedMatrix real = d.encoded.SelectRows(minority);
  const auto names = quality::EncodedColumnNames(*d.model);
  const auto stats = quality::DimwiseStatistics(real, synthetic, names);
  const auto prediction = quality::DimwisePrediction(real, synthetic, *d.model, seed);
  return {{"dimwise_means", stats.means.ToJson()},
          {"dimwise_stds", stats.stds.ToJson()},
          {"dimwise_prediction", prediction.panel.ToJson()},
          {"prediction_skipped", prediction.skipped},
          {"univariate", quality::Univariate(real, synthetic, *d.model).ToJson()}};
}

bench::BenchmarkConfig LoadBenchConfig(const std::string& path, const std::vector<uint64_t>& seeds,
                                       const std::string& out) {
  bench::BenchmarkConfig config = bench::LoadBenchmarkConfig(path);
  if (!seeds.empty()) config.seeds = seeds;
  if (!out.empty()) config.output_dir = out;
  config.Validate();
  return config;
}

int Run(int argc, char** argv) {
  CLI::App app{"Oversampling benchmark for imbalanced tabular classification"};
  app.require_subcommand(1);
  bool verbose = false;
  app.add_flag("-v,--verbose", verbose, "Log progress at debug level");

  // oversample
  auto* oversample = app.add_subcommand("oversample", "Balance one dataset with one method");
  std::string os_method, os_config, os_out, os_quality;
  uint64_t os_seed = 0;
  size_t os_k = 5, os_m = 10;
  GanFlags os_gan;
  oversample->add_option("--method", os_method, "none, random, smote, smote_nc, b_smote, adasyn or cwgan")->required();
  oversample->add_option("--config", os_config, "Dataset schema config (JSON)")->required();
  oversample->add_option("--seed", os_seed, "Random seed")->required();
  oversample->add_option("--out", os_out, "Balanced CSV to write")->required();
  oversample->add_option("--k", os_k, "Nearest neighbours for interpolation");
  oversample->add_option("--m", os_m, "Neighbours judging danger points (b_smote)");
  oversample->add_option("--quality-out", os_quality, "Generation quality report (JSON)");
  os_gan.Register(oversample);

  // train-gan
  auto* train = app.add_subcommand("train-gan", "Train a cWGAN on a dataset and save a checkpoint");
  std::string tr_config, tr_out;
  uint64_t tr_seed = 0;
  GanFlags tr_gan;
  train->add_option("--config", tr_config, "Dataset schema config (JSON)")->required();
  train->add_option("--seed", tr_seed, "Random seed")->required();
  train->add_option("--out", tr_out, "Checkpoint file")->required();
  tr_gan.Register(train);

  // sample
  auto* sample = app.add_subcommand("sample", "Generate minority rows from a checkpoint");
  std::string sa_checkpoint, sa_out;
  uint64_t sa_seed = 0;
  size_t sa_rows = 0;
  bool sa_argmax = false;
  sample->add_option("--checkpoint", sa_checkpoint, "Checkpoint file")->required();
  sample->add_option("--n", sa_rows, "Rows to generate")->required();
  sample->add_option("--seed", sa_seed, "Random seed")->required();
  sample->add_option("--out", sa_out, "CSV to write")->required();
  sample->add_flag("--argmax", sa_argmax, "Take the most likely category instead of sampling");

  // benchmark
  auto* benchmark = app.add_subcommand("benchmark", "Run the evaluation protocol");
  std::string be_config, be_out;
  std::vector<uint64_t> be_seeds;
  benchmark->add_option("--config", be_config, "Benchmark config (JSON)")->required();
  benchmark->add_option("--seed", be_seeds, "Replace the configured seeds");
  benchmark->add_option("--out", be_out, "Replace the configured output directory");

  // report
  auto* report = app.add_subcommand("report", "Rank tables and tests from benchmark results");
  std::string re_results, re_out;
  bench::ReportFilter re_filter;
  bool re_tie_correction = false;
  report->add_option("--results", re_results, "Results directory")->required();
  report->add_option("--out", re_out, "Report directory (default: <results>/report)");
  report->add_option("--dataset", re_filter.datasets, "Keep only these datasets");
  report->add_option("--method", re_filter.methods, "Keep only these methods");
  report->add_option("--classifier", re_filter.classifiers, "Keep only these classifiers");
  report->add_flag("--tie-correction", re_tie_correction, "Tie-corrected Friedman statistic");

  // ablate
  auto* ablate = app.add_subcommand("ablate", "Train cWGAN variants and compute counterfactual ranks");
  std::string ab_config, ab_out, ab_baseline;
  std::vector<uint64_t> ab_seeds;
  std::vector<std::string> ab_drop;
  ablate->add_option("--config", ab_config, "Benchmark config (JSON)")->required();
  ablate->add_option("--seed", ab_seeds, "Replace the configured seeds");
  ablate->add_option("--out", ab_out, "Replace the configured output directory");
  ablate->add_option("--drop", ab_drop,
                     "Elements removed together in one variant (wgan_gp, ac, categorical); "
                     "without it the standard variants run");
  ablate->add_option("--baseline", ab_baseline,
                     "Existing benchmark results (default: run the benchmark first)");

  // make-toy
  auto* toy = app.add_subcommand("make-toy", "Write the synthetic toy dataset and its schema");
  bench::ToyDataSpec toy_spec;
  std::string toy_csv, toy_schema;
  toy->add_option("--seed", toy_spec.seed, "Random seed")->required();
  toy->add_option("--rows", toy_spec.rows, "Rows");
  toy->add_option("--minority-share", toy_spec.minority_share, "Minority fraction");
  toy->add_option("--out", toy_csv, "CSV to write")->required();
  toy->add_option("--schema-out", toy_schema, "Schema config to write")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUserError;
  }
  spdlog::set_default_logger(spdlog::stderr_color_st("imbal"));
  spdlog::set_level(verbose ? spdlog::level::debug : spdlog::level::info);

  if (oversample->parsed()) {
    const resample::MethodTag tag = resample::ParseMethod(os_method);
    const LoadedData d = LoadForModelling(os_config);
    tabular::EncodedMatrix synthetic;
    if (tag == resample::MethodTag::kCwgan) {
      if (resample::MinorityLabel(d.encoded.labels) != 1) {
        throw UserError("the positive label must be the minority class");
      }
      const gan::TrainedGan trained =
          gan::TrainCwgan(d.encoded, os_gan.Resolve(), DeriveSeed(os_seed, "train"), d.model);
      Rng rng(DeriveSeed(os_seed, "sample"));
      synthetic = gan::SampleMinorityEncoded(trained, resample::ParityDeficit(d.encoded.labels), rng);
    } else {
      resample::OversampleMethod method{tag, os_k, os_m};
      method.Validate();
      Rng rng(os_seed);
      synthetic = TailRows(resample::Oversample(method, d.encoded, rng).data, d.encoded.NumRows());
    }
    tabular::TabularFrame out = d.frame;
    if (synthetic.NumRows() > 0) out.Append(d.model->InverseTransform(synthetic));
    tabular::WriteDataset(os_out, out, d.schema.delimiter);
    spdlog::info("wrote {} rows ({} synthetic) to {}", out.NumRows(), synthetic.NumRows(), os_out);
    if (!os_quality.empty()) {
      if (synthetic.NumRows() == 0) throw UserError("no synthetic rows to assess");
      WriteJsonFile(os_quality, QualityReport(d, synthetic, os_seed));
    }
    return 0;
  }

  if (train->parsed()) {
    const LoadedData d = LoadForModelling(tr_config);
    const gan::TrainedGan trained = gan::TrainCwgan(d.encoded, tr_gan.Resolve(), tr_seed, d.model);
    gan::SaveCheckpoint(trained, tr_out);
    spdlog::info("saved checkpoint to {}", tr_out);
    return 0;
  }

  if (sample->parsed()) {
    const gan::TrainedGan trained = gan::LoadCheckpoint(sa_checkpoint);
    if (!trained.preprocessor) throw UserError("checkpoint has no preprocessor to decode rows");
    Rng rng(sa_seed);
    const tabular::TabularFrame rows = gan::SampleMinority(
        trained, sa_rows, rng, sa_argmax ? gan::CategoryDraw::kArgmax : gan::CategoryDraw::kSample);
    tabular::WriteDataset(sa_out, rows, trained.preprocessor->schema().delimiter);
    return 0;
  }

  if (benchmark->parsed()) {
    const auto config = LoadBenchConfig(be_config, be_seeds, be_out);
    const auto result = bench::RunBenchmark(config);
    spdlog::info("{} records, {} failed cells in {}", result.records.size(),
                 result.failures.size(), config.output_dir);
    return 0;
  }

  if (report->parsed()) {
    const bench::ResultsStore store = bench::LoadResults(re_results);
    stats::TableOptions options;
    options.tie_correction = re_tie_correction;
    const bench::Report r = bench::BuildReport(store, re_filter, options);
    const std::string dir = re_out.empty() ? (fs::path(re_results) / "report").string() : re_out;
    bench::WriteReport(r, dir, re_results);
    if (r.ranks) {
      std::cout << r.ranks->MeanRankCsv() << '\n' << r.ranks->FriedmanCsv();
    } else {
      spdlog::info("no records selected; empty report written to {}", dir);
    }
    return 0;
  }

  if (ablate->parsed()) {
    const auto config = LoadBenchConfig(ab_config, ab_seeds, ab_out);
    std::vector<bench::Ablation> variants;
    if (ab_drop.empty()) {
      variants = bench::StandardAblations();
    } else {
      bench::Ablation a;
      for (const auto& d : ab_drop) a.Drop(d);
      variants = {a};
    }
    std::vector<bench::RunRecord> baseline;
    if (!ab_baseline.empty()) {
      baseline = bench::LoadResults(ab_baseline).records;
    } else {
      baseline = bench::RunBenchmark(config).records;
    }
    std::vector<std::pair<std::string, std::vector<bench::RunRecord>>> variant_records;
    for (auto& run : bench::RunAblations(config, variants)) {
      variant_records.emplace_back(run.ablation.Name(), std::move(run.result.records));
    }
    const auto columns = bench::CounterfactualRanks(baseline, variant_records);
    const fs::path dir = fs::path(config.output_dir) / "ablation";
    fs::create_directories(dir);
    const std::string table = bench::AblationTableCsv(columns);
    std::ofstream(dir / "ablation.csv") << table;
    WriteJsonFile((dir / "ablation.json").string(), bench::AblationJson(columns));
    std::cout << table;
    return 0;
  }

  if (toy->parsed()) {
    bench::WriteToyDataset(toy_spec, toy_csv, toy_schema);
    return 0;
  }
  return kUserError;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return Run(argc, argv);
  } catch (const UserError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUserError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUserError;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed configuration: " << e.what() << '\n';
    return kUserError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
}
