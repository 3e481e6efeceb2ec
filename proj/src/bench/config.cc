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


#include "imbal/bench/config.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <stdexcept>

#include "imbal/common/hash.h"

namespace imbal::bench {
namespace {

nlohmann::json DatasetJson(const DatasetEntry& entry) {
  if (entry.toy) {
    return {{"toy", {{"rows", entry.toy->rows},
                     {"minority_share", entry.toy->minority_share},
                     {"seed", entry.toy->seed}}}};
  }
  return entry.schema.ToJson();
}

DatasetEntry ParseDataset(const nlohmann::json& j, const std::string& base_dir) {
  DatasetEntry entry;
  if (j.is_string()) {
    std::filesystem::path path = j.get<std::string>();
    if (path.is_relative() && !base_dir.empty()) path = std::filesystem::path(base_dir) / path;
    entry.schema = tabular::LoadSchemaFile(path.string());
    return entry;
  }
  if (!j.is_object()) throw std::invalid_argument("config: dataset entries are paths or objects");
  if (j.contains("toy")) {
    const auto& t = j.at("toy");
    ToyDataSpec spec;
    spec.rows = t.value("rows", spec.rows);
    spec.minority_share = t.value("minority_share", spec.minority_share);
    spec.seed = t.value("seed", spec.seed);
    entry.toy = spec;
    entry.schema = ToySchema();
    if (j.contains("name")) entry.schema.name = j.at("name").get<std::string>();
    return entry;
  }
  entry.schema = tabular::DatasetSchema::FromJson(j, base_dir);
  return entry;
}

resample::OversampleMethod ParseMethodEntry(const nlohmann::json& j) {
  resample::OversampleMethod m;
  if (j.is_string()) {
    m.tag = resample::ParseMethod(j.get<std::string>());
    return m;
  }
  m.tag = resample::ParseMethod(j.at("name").get<std::string>());
  m.k_neighbours = j.value("k_neighbours", m.k_neighbours);
  m.m_neighbours = j.value("m_neighbours", m.m_neighbours);
  return m;
}

}  // namespace

std::string Ablation::Name() const {
  std::string name;
  auto add = [&](const char* part) { name += (name.empty() ? "" : "+") + std::string(part); };
  if (vanilla_loss) add("wgan_gp");
  if (drop_ac) add("ac");
  if (naive_categorical) add("categorical");
  return name.empty() ? "full" : name;
}

void Ablation::Drop(const std::string& element) {
  if (element == "wgan_gp") {
    vanilla_loss = true;
  } else if (element == "ac") {
    drop_ac = true;
  } else if (element == "categorical") {
    naive_categorical = true;
  } else {
    throw std::invalid_argument("unknown ablation element '" + element +
                                "' (expected wgan_gp, ac or categorical)");
  }
}

gan::GanConfig Ablation::Apply(gan::GanConfig config) const {
  if (vanilla_loss) config.loss_mode = gan::LossMode::kVanilla;
  if (drop_ac) config.use_ac = false;
  if (naive_categorical) config.naive_categorical = true;
  return config;
}

std::vector<Ablation> StandardAblations() {
  return {{.vanilla_loss = true},
          {.drop_ac = true},
          {.vanilla_loss = true, .drop_ac = true},
          {.naive_categorical = true}};
}

void BenchmarkConfig::Validate() const {
  if (datasets.empty()) throw std::invalid_argument("config: no datasets");
  if (methods.empty()) throw std::invalid_argument("config: no methods");
  if (classifiers.empty()) throw std::invalid_argument("config: no classifiers");
  if (seeds.empty()) throw std::invalid_argument("config: no seeds");
  if (std::set<uint64_t>(seeds.begin(), seeds.end()).size() != seeds.size()) {
    throw std::invalid_argument("config: seeds must be unique");
  }
  if (!(test_fraction > 0 && test_fraction < 1)) {
    throw std::invalid_argument("config: test_fraction must lie in (0, 1)");
  }
  if (bootstrap < 1) throw std::invalid_argument("config: bootstrap must be positive");
  std::set<std::string> names;
  for (const DatasetEntry& d : datasets) {
    if (!names.insert(d.name()).second) {
      throw std::invalid_argument("config: duplicate dataset '" + d.name() + "'");
    }
    if (!d.toy) d.schema.Validate();
  }
  std::set<resample::MethodTag> tags;
  for (const auto& m : methods) {
    m.Validate();
    if (!tags.insert(m.tag).second) {
      throw std::invalid_argument("config: duplicate method '" + resample::MethodName(m.tag) + "'");
    }
  }
  if (std::set<eval::ClassifierKind>(classifiers.begin(), classifiers.end()).size() !=
      classifiers.size()) {
    throw std::invalid_argument("config: duplicate classifier");
  }
  ablation.Apply(gan).Validate();
  if (grid) grid->Validate();
}

nlohmann::json BenchmarkConfig::ToJson() const {
  nlohmann::json j;
  j["datasets"] = nlohmann::json::array();
  for (const auto& d : datasets) j["datasets"].push_back(DatasetJson(d));
  j["methods"] = nlohmann::json::array();
  for (const auto& m : methods) {
    j["methods"].push_back({{"name", resample::MethodName(m.tag)},
                            {"k_neighbours", m.k_neighbours},
                            {"m_neighbours", m.m_neighbours}});
  }
  j["classifiers"] = nlohmann::json::array();
  for (auto c : classifiers) j["classifiers"].push_back(eval::ClassifierName(c));
  j["seeds"] = seeds;
  j["test_fraction"] = test_fraction;
  j["bootstrap"] = bootstrap;
  j["output_dir"] = output_dir;
  j["gan"] = gan.ToJson();
  j["grid_search"] = grid ? grid->ToJson() : nlohmann::json(nullptr);
  j["ablation"] = {{"vanilla_loss", ablation.vanilla_loss},
                   {"drop_ac", ablation.drop_ac},
                   {"naive_categorical", ablation.naive_categorical}};
  return j;
}

BenchmarkConfig BenchmarkConfig::FromJson(const nlohmann::json& j, const std::string& base_dir) {
  BenchmarkConfig c;
  for (const auto& d : j.at("datasets")) c.datasets.push_back(ParseDataset(d, base_dir));
  for (const auto& m : j.at("methods")) c.methods.push_back(ParseMethodEntry(m));
  if (j.contains("classifiers")) {
    c.classifiers.clear();
    for (const auto& name : j.at("classifiers")) {
      c.classifiers.push_back(eval::ParseClassifier(name.get<std::string>()));
    }
  }
  if (j.contains("seeds")) c.seeds = j.at("seeds").get<std::vector<uint64_t>>();
  c.test_fraction = j.value("test_fraction", c.test_fraction);
  c.bootstrap = j.value("bootstrap", c.bootstrap);
  c.output_dir = j.value("output_dir", c.output_dir);
  if (j.contains("gan")) c.gan = gan::GanConfig::FromJson(j.at("gan"));
  if (j.contains("grid_search") && !j.at("grid_search").is_null()) {
    c.grid = gan::GridSpec::FromJson(j.at("grid_search"));
  }
  if (j.contains("ablation")) {
    const auto& a = j.at("ablation");
    c.ablation.vanilla_loss = a.value("vanilla_loss", false);
    c.ablation.drop_ac = a.value("drop_ac", false);
    c.ablation.naive_categorical = a.value("naive_categorical", false);
  }
  c.Validate();
  return c;
}

uint64_t BenchmarkConfig::Hash() const {
  nlohmann::json j = ToJson();
  j.erase("output_dir");
  return Fnv1a64(j.dump());
}

BenchmarkConfig LoadBenchmarkConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("config '" + path + "' is not valid JSON: " + e.what());
  }
  BenchmarkConfig config = BenchmarkConfig::FromJson(
      j, std::filesystem::path(path).parent_path().string());
  return config;
}

}  // namespace imbal::bench
