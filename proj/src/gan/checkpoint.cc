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


#include "imbal/gan/checkpoint.h"

#include <fstream>
#include <stdexcept>

namespace imbal::gan {
namespace {

using nlohmann::json;

json StoreToJson(const nn::ParamStore& store) {
  json tensors = json::array();
  for (const auto& [name, tensor] : store.entries()) {
    const Matrix& v = tensor.value();
    std::vector<double> data;
    data.reserve(static_cast<size_t>(v.size()));
    for (Eigen::Index r = 0; r < v.rows(); ++r) {
      for (Eigen::Index c = 0; c < v.cols(); ++c) data.push_back(v(r, c));
    }
    tensors.push_back({{"name", name}, {"rows", v.rows()}, {"cols", v.cols()}, {"data", data}});
  }
  return tensors;
}

void StoreFromJson(const json& tensors, nn::ParamStore& store, const char* network) {
  const auto& entries = store.entries();
  if (tensors.size() != entries.size()) {
    throw std::runtime_error(std::string("checkpoint: ") + network + " has " +
                             std::to_string(tensors.size()) + " tensors, expected " +
                             std::to_string(entries.size()));
  }
  for (size_t i = 0; i < entries.size(); ++i) {
    const json& t = tensors[i];
    Tensor dst = entries[i].second;  // shares storage with the store
    const auto rows = t.at("rows").get<Eigen::Index>();
    const auto cols = t.at("cols").get<Eigen::Index>();
    const auto data = t.at("data").get<std::vector<double>>();
    if (t.at("name").get<std::string>() != entries[i].first || rows != dst.rows() ||
        cols != dst.cols() || static_cast<Eigen::Index>(data.size()) != rows * cols) {
      throw std::runtime_error(std::string("checkpoint: ") + network +
                               " tensor mismatch at " + entries[i].first);
    }
    Matrix& v = dst.mutable_value();
    for (Eigen::Index r = 0; r < rows; ++r) {
      for (Eigen::Index c = 0; c < cols; ++c) v(r, c) = data[static_cast<size_t>(r * cols + c)];
    }
  }
}

json LayoutToJson(const tabular::EncodedLayout& layout) {
  json spans = json::array();
  for (const auto& s : layout.spans) {
    spans.push_back({{"column", s.column}, {"offset", s.offset}, {"width", s.width}});
  }
  return {{"numeric_columns", layout.numeric_columns}, {"spans", spans}};
}

tabular::EncodedLayout LayoutFromJson(const json& j) {
  tabular::EncodedLayout layout;
  layout.numeric_columns = j.at("numeric_columns").get<std::vector<size_t>>();
  for (const json& s : j.at("spans")) {
    layout.spans.push_back({s.at("column").get<size_t>(), s.at("offset").get<size_t>(),
                            s.at("width").get<size_t>()});
  }
  return layout;
}

json EpochToJson(const EpochLog& e) {
  return {{"epoch", e.epoch},       {"disc_loss", e.disc_loss}, {"wasserstein", e.wasserstein},
          {"penalty", e.penalty},   {"gen_loss", e.gen_loss},   {"ac_term", e.ac_term},
          {"ac_scale", e.ac_scale}, {"disc_steps", e.disc_steps}, {"gen_steps", e.gen_steps}};
}

EpochLog EpochFromJson(const json& j) {
  EpochLog e;
  e.epoch = j.at("epoch").get<int>();
  e.disc_loss = j.at("disc_loss").get<double>();
  e.wasserstein = j.at("wasserstein").get<double>();
  e.penalty = j.at("penalty").get<double>();
  e.gen_loss = j.at("gen_loss").get<double>();
  e.ac_term = j.at("ac_term").get<double>();
  e.ac_scale = j.at("ac_scale").get<double>();
  e.disc_steps = j.at("disc_steps").get<int>();
  e.gen_steps = j.at("gen_steps").get<int>();
  return e;
}

}  // namespace

json CheckpointToJson(const TrainedGan& gan) {
  json history = json::array();
  for (const EpochLog& e : gan.log.epochs) history.push_back(EpochToJson(e));
  json j = {
      {"format", kCheckpointFormat},
      {"version", kCheckpointVersion},
      {"config", gan.config.ToJson()},
      {"layout", LayoutToJson(gan.nets.generator.layout())},
      {"minority_share", gan.minority_share},
      {"ac_pretrain_loss", gan.log.ac_pretrain_loss},
      {"epochs", history},
      {"disc_steps", gan.log.disc_steps},
      {"generator_steps", gan.log.generator_steps},
      {"networks",
       {{"generator", StoreToJson(gan.nets.generator.params())},
        {"discriminator", StoreToJson(gan.nets.discriminator.params())},
        {"aux_classifier", StoreToJson(gan.nets.aux_classifier.params())}}},
  };
  j["preprocessor"] = gan.preprocessor ? gan.preprocessor->ToJson() : json(nullptr);
  return j;
}

TrainedGan CheckpointFromJson(const json& j) {
  if (!j.is_object() || j.value("format", "") != kCheckpointFormat) {
    throw std::runtime_error("checkpoint: not an imbal-cwgan document");
  }
  const int version = j.at("version").get<int>();
  if (version != kCheckpointVersion) {
    throw std::runtime_error("checkpoint: unsupported version " + std::to_string(version));
  }
  const GanConfig config = GanConfig::FromJson(j.at("config"));
  const tabular::EncodedLayout layout = LayoutFromJson(j.at("layout"));
  TrainedGan gan{config, GanNetworks::Create(layout, config, 0), 0, {}, nullptr};
  const json& nets = j.at("networks");
  StoreFromJson(nets.at("generator"), gan.nets.generator.params(), "generator");
  StoreFromJson(nets.at("discriminator"), gan.nets.discriminator.params(), "discriminator");
  StoreFromJson(nets.at("aux_classifier"), gan.nets.aux_classifier.params(), "aux_classifier");
  gan.minority_share = j.at("minority_share").get<double>();
  gan.log.ac_pretrain_loss = j.at("ac_pretrain_loss").get<std::vector<double>>();
  for (const json& e : j.at("epochs")) gan.log.epochs.push_back(EpochFromJson(e));
  gan.log.disc_steps = j.at("disc_steps").get<long>();
  gan.log.generator_steps = j.at("generator_steps").get<long>();
  if (!j.at("preprocessor").is_null()) {
    gan.preprocessor = std::make_shared<const tabular::PreprocessorModel>(
        tabular::PreprocessorModel::FromJson(j.at("preprocessor")));
    if (!(gan.preprocessor->layout() == layout)) {
      throw std::runtime_error("checkpoint: preprocessor layout differs from the networks");
    }
  }
  return gan;
}

void SaveCheckpoint(const TrainedGan& gan, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write checkpoint " + path);
  out << CheckpointToJson(gan).dump() << '\n';
  if (!out) throw std::runtime_error("failed writing checkpoint " + path);
}

TrainedGan LoadCheckpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read checkpoint " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::runtime_error("checkpoint " + path + ": " + e.what());
  }
  return CheckpointFromJson(j);
}

}  // namespace imbal::gan
