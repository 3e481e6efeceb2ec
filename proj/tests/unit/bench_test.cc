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


#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "imbal/bench/ablation.h"
#include "imbal/bench/config.h"
#include "imbal/bench/report.h"
#include "imbal/bench/runner.h"

namespace imbal::bench {
namespace {

namespace fs = std::filesystem;

fs::path ScratchDir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("imbal_bench_test_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string Slurp(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

BenchmarkConfig SmallConfig(const fs::path& out) {
  BenchmarkConfig c;
  DatasetEntry toy;
  toy.toy = ToyDataSpec{.rows = 300, .minority_share = 0.2, .seed = 5};
  toy.schema = ToySchema();
  c.datasets = {toy};
  c.methods = {{.tag = resample::MethodTag::kNone},
               {.tag = resample::MethodTag::kRandom},
               {.tag = resample::MethodTag::kSmote}};
  c.classifiers = {eval::ClassifierKind::kLogistic, eval::ClassifierKind::kKnn};
  c.seeds = {1, 2};
  c.bootstrap = 20;
  c.output_dir = out.string();
  return c;
}

RunRecord MakeRecord(const std::string& dataset, uint64_t seed, const std::string& method,
                     const std::string& classifier, eval::MetricKind metric, double value) {
  RunRecord r;
  r.metric = {dataset, seed, method, classifier, metric, value, {value}};
  return r;
}

TEST_CASE("config JSON round trip, hash and validation") {
  BenchmarkConfig c = SmallConfig("out_a");
  c.grid = gan::GridSpec{};
  c.ablation.drop_ac = true;
  const BenchmarkConfig back = BenchmarkConfig::FromJson(c.ToJson());
  CHECK(back.ToJson() == c.ToJson());
  CHECK(back.Hash() == c.Hash());

  BenchmarkConfig moved = c;
  moved.output_dir = "elsewhere";
  CHECK(moved.Hash() == c.Hash());
  BenchmarkConfig reseeded = c;
  reseeded.seeds = {1, 3};
  CHECK(reseeded.Hash() != c.Hash());

  BenchmarkConfig bad = c;
  bad.seeds = {1, 1};
  CHECK_THROWS_AS(bad.Validate(), std::invalid_argument);
  bad = c;
  bad.seeds.clear();
  CHECK_THROWS_AS(bad.Validate(), std::invalid_argument);
  bad = c;
  bad.test_fraction = 1.0;
  CHECK_THROWS_AS(bad.Validate(), std::invalid_argument);
  bad = c;
  bad.methods.push_back({.tag = resample::MethodTag::kNone});
  CHECK_THROWS_AS(bad.Validate(), std::invalid_argument);

  const auto parsed = BenchmarkConfig::FromJson(nlohmann::json::parse(
      R"({"datasets": [{"toy": {"rows": 100}}], "methods": ["none", {"name": "b_smote", "m_neighbours": 7}]})"));
  CHECK(parsed.seeds.size() == 6);
  CHECK(parsed.test_fraction == 0.1);
  CHECK(parsed.bootstrap == 100);
  CHECK(parsed.classifiers.size() == 5);
  CHECK(parsed.methods[1].m_neighbours == 7);
  CHECK_FALSE(parsed.grid.has_value());
}

TEST_CASE("ablation names and switches") {
  Ablation a;
  CHECK(a.Name() == "full");
  a.Drop("ac");
  a.Drop("wgan_gp");
  CHECK(a.Name() == "wgan_gp+ac");
  const gan::GanConfig g = a.Apply({});
  CHECK(g.loss_mode == gan::LossMode::kVanilla);
  CHECK_FALSE(g.use_ac);
  CHECK_FALSE(g.naive_categorical);
  CHECK_THROWS_AS(a.Drop("gp"), std::invalid_argument);
  CHECK(StandardAblations().size() == 4);
}

TEST_CASE("partitions are stratified and identical across methods") {
  const BenchmarkConfig c = SmallConfig("unused");
  const auto frame = LoadEntry(c.datasets[0]);
  const Partition a = MakePartition(c.datasets[0], frame, 1, 0.1);
  const Partition b = MakePartition(c.datasets[0], frame, 1, 0.1);
  const Partition other = MakePartition(c.datasets[0], frame, 2, 0.1);
  CHECK(PartitionChecksum(a.split, a.train) == PartitionChecksum(b.split, b.train));
  CHECK(PartitionChecksum(a.split, a.train) != PartitionChecksum(other.split, other.train));
  CHECK(a.test.NumRows() == 30);
  CHECK(std::count(a.test.labels.begin(), a.test.labels.end(), 1) == 6);
}

TEST_CASE("small benchmark writes complete, reproducible records") {
  const fs::path dir = ScratchDir("run");
  const BenchmarkConfig c = SmallConfig(dir);
  const BenchmarkResult r = RunBenchmark(c);
  // datasets x seeds x methods x classifiers x metrics
  REQUIRE(r.records.size() == 1 * 2 * 3 * 2 * 3);
  CHECK(r.failures.empty());
  std::map<uint64_t, std::set<std::string>> checksums;
  for (const RunRecord& rec : r.records) {
    CHECK(rec.metric.bootstrap.size() == 20);
    CHECK_FALSE(rec.non_finite);
    CHECK(rec.config_hash.size() == 16);
    checksums[rec.metric.seed].insert(rec.partition_checksum);
  }
  CHECK(checksums[1].size() == 1);
  CHECK(checksums[2].size() == 1);
  CHECK(*checksums[1].begin() != *checksums[2].begin());

  const std::string first = Slurp(dir / kRecordsFile);
  RunBenchmark(c);
  CHECK(Slurp(dir / kRecordsFile) == first);
  CHECK(fs::exists(dir / kMetadataFile));

  const ResultsStore store = LoadResults(dir.string());
  CHECK(store.records.size() == r.records.size());
  CHECK(store.records[5].ToJson() == r.records[5].ToJson());
  CHECK(store.config == c.ToJson());
}

TEST_CASE("a failing cell is recorded and the sweep continues") {
  BenchmarkConfig c = SmallConfig(ScratchDir("fail"));
  c.methods[2].k_neighbours = 500;  // more neighbours than minority rows
  const BenchmarkResult r = RunBenchmark(c, {.write_files = false});
  CHECK(r.records.size() == 2 * 2 * 2 * 3);
  REQUIRE(r.failures.size() == 2);
  CHECK(r.failures[0].method == "smote");
  CHECK(r.failures[0].classifier.empty());
}

TEST_CASE("report tables over a run") {
  const fs::path dir = ScratchDir("report");
  const BenchmarkConfig c = SmallConfig(dir);
  RunBenchmark(c);
  const Report report = BuildReport(LoadResults(dir.string()));
  CHECK(report.methods == std::vector<std::string>{"none", "random", "smote"});
  REQUIRE(report.ranks);
  CHECK(report.ranks->friedman.size() == 2 * 3);  // one row per classifier x metric
  CHECK(report.scores.size() == 2 * 3 * 3);
  for (const ScoreSummary& s : report.scores) CHECK(s.seeds == 2);
  const std::string raw = report.RawScoresCsv();
  CHECK(raw.find("toy,none,") != std::string::npos);
  CHECK(raw.find(" (") != std::string::npos);
  WriteReport(report, (dir / "report").string(), dir.string());
  for (const char* f : {"raw_scores.csv", "rank_blocks.csv", "mean_ranks.csv", "friedman.csv",
                        "report.json"}) {
    CHECK(fs::exists(dir / "report" / f));
  }

  ReportFilter absent;
  absent.datasets = {"absent"};
  const Report empty = BuildReport(LoadResults(dir.string()), absent);
  CHECK(empty.scores.empty());
  CHECK_FALSE(empty.ranks);
  CHECK(empty.RawScoresCsv().empty());
}

TEST_CASE("mean and sample std over seeds use bootstrap means") {
  std::vector<RunRecord> records = {
      MakeRecord("d", 1, "none", "knn", eval::MetricKind::kAucRoc, 0.6),
      MakeRecord("d", 2, "none", "knn", eval::MetricKind::kAucRoc, 0.8),
  };
  records[0].metric.bootstrap = {0.5, 0.7};  // mean 0.6
  const auto s = SummariseScores(records);
  REQUIRE(s.size() == 1);
  CHECK(s[0].mean == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(s[0].std == doctest::Approx(std::sqrt(0.02)).epsilon(1e-12));
}

TEST_CASE("counterfactual ranks swap the cwgan rows") {
  // Two metrics, one classifier, one dataset; cwgan first on both.
  std::vector<RunRecord> baseline;
  auto add = [&](std::vector<RunRecord>& to, const std::string& method, double auc, double brier) {
    to.push_back(MakeRecord("d", 1, method, "knn", eval::MetricKind::kAucRoc, auc));
    to.push_back(MakeRecord("d", 1, method, "knn", eval::MetricKind::kBrier, brier));
  };
  add(baseline, "none", 0.7, 0.20);
  add(baseline, "smote", 0.8, 0.15);
  add(baseline, "cwgan", 0.9, 0.10);
  std::vector<RunRecord> weaker;
  add(weaker, "cwgan", 0.75, 0.12);
  const auto cols = CounterfactualRanks(baseline, {{"ac", weaker}});
  REQUIRE(cols.size() == 1);
  CHECK(*cols[0].mean_rank == 1.0);
  CHECK(*cols[0].worse == 2);
  CHECK(cols[0].combinations == 2);
  CHECK(*cols[0].counterfactual_mean_rank == doctest::Approx(1.5));  // ranks 2 and 1
  CHECK(*cols[0].counterfactual_rank_of_mean_ranks == 1);             // smote also 1.5
  const std::string table = AblationTableCsv(cols);
  CHECK(table.find(kCounterfactualRow) != std::string::npos);

  const auto missing = CounterfactualRanks(baseline, {{"categorical", {}}});
  CHECK_FALSE(missing[0].counterfactual_mean_rank);
  CHECK(AblationTableCsv(missing).find("N/A") != std::string::npos);
}

}  // namespace
}  // namespace imbal::bench
