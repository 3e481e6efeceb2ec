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


#include "imbal/bench/results.h"

#include <cmath>
#include <filesystem>
#include <stdexcept>

namespace imbal::bench {

nlohmann::json RunRecord::ToJson() const {
  return {{"dataset", metric.dataset},
          {"seed", metric.seed},
          {"method", metric.method},
          {"classifier", metric.classifier},
          {"metric", eval::MetricName(metric.metric)},
          {"value", metric.value},
          {"bootstrap_mean", metric.BootstrapMean()},
          {"bootstrap", metric.bootstrap},
          {"config_hash", config_hash},
          {"partition_checksum", partition_checksum},
          {"method_params", method_params},
          {"non_finite", non_finite}};
}

RunRecord RunRecord::FromJson(const nlohmann::json& j) {
  RunRecord r;
  r.metric.dataset = j.at("dataset").get<std::string>();
  r.metric.seed = j.at("seed").get<uint64_t>();
  r.metric.method = j.at("method").get<std::string>();
  r.metric.classifier = j.at("classifier").get<std::string>();
  r.metric.metric = eval::ParseMetric(j.at("metric").get<std::string>());
  // Non-finite values are written as null.
  const auto& value = j.at("value");
  r.metric.value = value.is_null() ? NAN : value.get<double>();
  for (const auto& b : j.at("bootstrap")) r.metric.bootstrap.push_back(b.is_null() ? NAN : b.get<double>());
  r.config_hash = j.value("config_hash", "");
  r.partition_checksum = j.value("partition_checksum", "");
  r.method_params = j.value("method_params", nlohmann::json::object());
  r.non_finite = j.value("non_finite", false);
  return r;
}

nlohmann::json CellFailure::ToJson() const {
  return {{"dataset", dataset}, {"seed", seed}, {"method", method},
          {"classifier", classifier}, {"error", error}};
}

CellFailure CellFailure::FromJson(const nlohmann::json& j) {
  return {j.at("dataset").get<std::string>(), j.at("seed").get<uint64_t>(),
          j.at("method").get<std::string>(), j.value("classifier", ""),
          j.value("error", "")};
}

JsonLinesWriter::JsonLinesWriter(const std::string& path) : out_(path, std::ios::trunc) {
  if (!out_) throw std::runtime_error("cannot write '" + path + "'");
}

void JsonLinesWriter::Write(const nlohmann::json& line) {
  out_ << line.dump() << '\n';
  out_.flush();
}

std::vector<nlohmann::json> ReadJsonLines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::vector<nlohmann::json> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (in.eof()) {
      // No trailing newline: the writer may still be busy with this line.
      const auto parsed = nlohmann::json::parse(line, nullptr, false);
      if (!parsed.is_discarded()) lines.push_back(parsed);
      break;
    }
    lines.push_back(nlohmann::json::parse(line));
  }
  return lines;
}

ResultsStore LoadResults(const std::string& dir) {
  namespace fs = std::filesystem;
  const fs::path root(dir);
  if (!fs::exists(root / kRecordsFile)) {
    throw std::invalid_argument("no " + std::string(kRecordsFile) + " in '" + dir + "'");
  }
  ResultsStore store;
  for (const auto& j : ReadJsonLines((root / kRecordsFile).string())) {
    store.records.push_back(RunRecord::FromJson(j));
  }
  if (fs::exists(root / kFailuresFile)) {
    for (const auto& j : ReadJsonLines((root / kFailuresFile).string())) {
      store.failures.push_back(CellFailure::FromJson(j));
    }
  }
  if (fs::exists(root / kConfigFile)) {
    std::ifstream in(root / kConfigFile);
    in >> store.config;
  }
  return store;
}

}  // namespace imbal::bench
