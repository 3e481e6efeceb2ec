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


#include "imbal/bench/runner.h"

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>

#include <spdlog/spdlog.h>

#include "imbal/common/hash.h"
#include "imbal/common/random.h"
#include "imbal/eval/classifiers.h"
#include "imbal/gan/grid_search.h"
#include "imbal/gan/sampling.h"
#include "imbal/gan/trainer.h"
#include "imbal/quality/gen_quality.h"

namespace imbal::bench {
namespace {

using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

uint64_t CellSeed(uint64_t seed, const std::string& dataset, const std::string& method) {
  return DeriveSeed(DeriveSeed(seed, dataset), method);
}

bool AllFinite(const eval::MetricRecord& r) {
  if (!std::isfinite(r.value)) return false;
  for (double b : r.bootstrap) {
    if (!std::isfinite(b)) return false;
  }
  return true;
}

nlohmann::json QualitySummary(const Partition& p, const tabular::EncodedMatrix& synthetic) {
  std::vector<size_t> minority;
  for (size_t i = 0; i < p.train.labels.size(); ++i) {
    if (p.train.labels[i] == 1) minority.push_back(i);
  }
  const tabular::EncodedMatrix real = p.train.SelectRows(minority);
  const auto names = quality::EncodedColumnNames(*p.preprocessor);
  const quality::DimwiseStats stats = quality::DimwiseStatistics(real, synthetic, names);
  return {{"dataset", p.dataset},
          {"seed", p.seed},
          {"dimwise_means", stats.means.ToJson()},
          {"dimwise_stds", stats.stds.ToJson()},
          {"univariate", quality::Univariate(real, synthetic, *p.preprocessor).ToJson()}};
}

}  // namespace

std::vector<int> FrameLabels(const tabular::TabularFrame& frame,
                             const tabular::DatasetSchema& schema) {
  std::vector<int> labels(frame.NumRows());
  for (size_t i = 0; i < labels.size(); ++i) {
    labels[i] = frame.target[i] == schema.positive_label ? 1 : 0;
  }
  return labels;
}

tabular::TabularFrame LoadEntry(const DatasetEntry& entry) {
  return entry.toy ? MakeToyData(*entry.toy) : tabular::LoadDataset(entry.schema);
}

Partition MakePartition(const DatasetEntry& entry, const tabular::TabularFrame& frame,
                        uint64_t seed, double test_fraction) {
  Partition p;
  p.dataset = entry.name();
  p.seed = seed;
  p.split = eval::StratifiedSplit(FrameLabels(frame, entry.schema), test_fraction,
                                  DeriveSeed(DeriveSeed(seed, entry.name()), "split"));
  const tabular::TabularFrame train = frame.SelectRows(p.split.train);
  auto model = std::make_shared<tabular::PreprocessorModel>(
      tabular::PreprocessorModel::Fit(train, entry.schema));
  p.train = model->Transform(train);
  p.test = model->Transform(frame.SelectRows(p.split.test));
  p.preprocessor = std::move(model);
  return p;
}

uint64_t PartitionChecksum(const eval::TrainTestSplit& split,
                           const tabular::EncodedMatrix& train) {
  uint64_t h = Fnv1a64(split.train.data(), split.train.size() * sizeof(size_t));
  h = Fnv1a64(split.test.data(), split.test.size() * sizeof(size_t), h);
  h = Fnv1a64(train.values.data(), static_cast<size_t>(train.values.size()) * sizeof(double), h);
  return Fnv1a64(train.labels.data(), train.labels.size() * sizeof(int), h);
}

OversampledTrain OversampleTrain(const BenchmarkConfig& config,
                                 const resample::OversampleMethod& method,
                                 const Partition& partition, uint64_t seed) {
  OversampledTrain out;
  out.params = {{"method", resample::MethodName(method.tag)}};
  if (method.tag != resample::MethodTag::kCwgan) {
    if (method.tag != resample::MethodTag::kNone && method.tag != resample::MethodTag::kRandom) {
      out.params["k_neighbours"] = method.k_neighbours;
    }
    if (method.tag == resample::MethodTag::kBSmote) out.params["m_neighbours"] = method.m_neighbours;
    Rng rng(DeriveSeed(seed, "oversample"));
    resample::OversampleResult r = resample::Oversample(method, partition.train, rng);
    if (r.fell_back) out.params["fell_back_to_smote"] = true;
    out.data = std::move(r.data);
    return out;
  }

  const tabular::EncodedMatrix& train = partition.train;
  if (resample::MinorityLabel(train.labels) != 1) {
    throw std::invalid_argument("cwgan: the positive label is not the minority class");
  }
  gan::GanConfig gan_config = config.ablation.Apply(config.gan);
  if (config.grid) {
    const gan::GridResult grid =
        gan::GridSearch(train, gan_config, *config.grid, DeriveSeed(seed, "grid"));
    gan_config = grid.best_config();
    out.params["grid"] = {{"selected_cell", grid.best},
                          {"mean_auc", grid.cells[grid.best].mean_auc},
                          {"trainings", grid.trainings}};
    spdlog::info("{} seed {}: grid picked cell {} (mean AUC {:.4f})", partition.dataset,
                 partition.seed, grid.best, grid.cells[grid.best].mean_auc);
  }
  out.params["gan"] = gan_config.ToJson();
  out.params["ablation"] = config.ablation.Name();
  const gan::TrainedGan trained =
      gan::TrainCwgan(train, gan_config, DeriveSeed(seed, "train"), partition.preprocessor);
  Rng rng(DeriveSeed(seed, "sample"));
  tabular::EncodedMatrix synthetic =
      gan::SampleMinorityEncoded(trained, resample::ParityDeficit(train.labels), rng);
  out.data = train;
  out.data.Append(synthetic);
  out.synthetic = std::move(synthetic);
  return out;
}

BenchmarkResult RunBenchmark(const BenchmarkConfig& config, const RunOptions& options) {
  config.Validate();
  namespace fs = std::filesystem;
  const fs::path root(config.output_dir);
  const std::string config_hash = HexDigest(config.Hash());
  std::unique_ptr<JsonLinesWriter> records_out, failures_out;
  if (options.write_files) {
    fs::create_directories(root);
    std::ofstream(root / kConfigFile) << config.ToJson().dump(2) << '\n';
    records_out = std::make_unique<JsonLinesWriter>((root / kRecordsFile).string());
    failures_out = std::make_unique<JsonLinesWriter>((root / kFailuresFile).string());
  }

  BenchmarkResult result;
  nlohmann::json timings = nlohmann::json::array();
  const auto run_start = Clock::now();
  auto fail = [&](CellFailure f) {
    spdlog::error("{} seed {} {} {}: {}", f.dataset, f.seed, f.method, f.classifier, f.error);
    if (failures_out) failures_out->Write(f.ToJson());
    result.failures.push_back(std::move(f));
  };

  for (const DatasetEntry& entry : config.datasets) {
    tabular::TabularFrame frame;
    try {
      frame = LoadEntry(entry);
    } catch (const std::exception& e) {
      for (uint64_t seed : config.seeds) {
        for (const auto& m : config.methods) {
          fail({entry.name(), seed, resample::MethodName(m.tag), "", e.what()});
        }
      }
      continue;
    }
    for (uint64_t seed : config.seeds) {
      Partition partition;
      try {
        partition = MakePartition(entry, frame, seed, config.test_fraction);
      } catch (const std::exception& e) {
        for (const auto& m : config.methods) {
          fail({entry.name(), seed, resample::MethodName(m.tag), "", e.what()});
        }
        continue;
      }
      spdlog::info("{} seed {}: {} train / {} test rows", entry.name(), seed,
                   partition.train.NumRows(), partition.test.NumRows());
      for (const auto& method : config.methods) {
        const std::string method_name = resample::MethodName(method.tag);
        const uint64_t cell_seed = CellSeed(seed, entry.name(), method_name);
        // Taken from the matrix this method is about to consume.
        const std::string checksum = HexDigest(PartitionChecksum(partition.split, partition.train));
        const auto method_start = Clock::now();
        OversampledTrain balanced;
        try {
          balanced = OversampleTrain(config, method, partition, cell_seed);
        } catch (const std::exception& e) {
          fail({entry.name(), seed, method_name, "", e.what()});
          continue;
        }
        const double oversample_seconds = SecondsSince(method_start);
        if (balanced.synthetic) {
          nlohmann::json q = QualitySummary(partition, *balanced.synthetic);
          if (options.write_files) {
            fs::create_directories(root / "quality");
            std::ofstream(root / "quality" /
                          (entry.name() + "_seed" + std::to_string(seed) + ".json"))
                << q.dump() << '\n';
          }
          result.quality.push_back(std::move(q));
        }
        for (eval::ClassifierKind kind : config.classifiers) {
          const std::string classifier = eval::ClassifierName(kind);
          const uint64_t fit_seed = DeriveSeed(cell_seed, classifier);
          const auto fit_start = Clock::now();
          try {
            const Eigen::VectorXd scores =
                eval::FitPredict(kind, balanced.data.values, balanced.data.labels,
                                 partition.test.values, DeriveSeed(fit_seed, "fit"));
            Rng boot_rng(DeriveSeed(fit_seed, "bootstrap"));
            const eval::BootstrapResult boot = eval::BootstrapMetrics(
                scores, partition.test.labels, config.bootstrap, boot_rng);
            for (eval::MetricKind metric : eval::kAllMetrics) {
              RunRecord r;
              r.metric = {entry.name(), seed, method_name, classifier, metric,
                          eval::Metric(metric, scores, partition.test.labels),
                          boot.Values(metric)};
              r.config_hash = config_hash;
              r.partition_checksum = checksum;
              r.method_params = balanced.params;
              r.non_finite = !AllFinite(r.metric);
              if (r.non_finite) {
                spdlog::warn("{} seed {} {} {}: non-finite {}", entry.name(), seed,
                             method_name, classifier, eval::MetricName(metric));
              }
              if (records_out) records_out->Write(r.ToJson());
              result.records.push_back(std::move(r));
            }
          } catch (const std::exception& e) {
            fail({entry.name(), seed, method_name, classifier, e.what()});
            continue;
          }
          timings.push_back({{"dataset", entry.name()},
                             {"seed", seed},
                             {"method", method_name},
                             {"classifier", classifier},
                             {"oversample_seconds", oversample_seconds},
                             {"classify_seconds", SecondsSince(fit_start)}});
        }
      }
    }
  }

  if (options.write_files) {
    const nlohmann::json metadata = {
        {"config_hash", config_hash},
        {"started_unix", static_cast<int64_t>(std::time(nullptr) - SecondsSince(run_start))},
        {"wall_seconds", SecondsSince(run_start)},
        {"records", result.records.size()},
        {"failures", result.failures.size()},
        {"cells", timings}};
    std::ofstream(root / kMetadataFile) << metadata.dump(2) << '\n';
  }
  return result;
}

}  // namespace imbal::bench
