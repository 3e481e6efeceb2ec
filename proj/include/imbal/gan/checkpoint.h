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


#ifndef IMBAL_GAN_CHECKPOINT_H_
#define IMBAL_GAN_CHECKPOINT_H_

#include <string>

#include "imbal/gan/trainer.h"
#include "json.hpp"

namespace imbal::gan {

inline constexpr const char* kCheckpointFormat = "imbal-cwgan";
inline constexpr int kCheckpointVersion = 1;

// Self-describing JSON document: format tag and version, config, encoded
// layout, minority share, per-epoch history, the fitted preprocessor when
// attached, and every parameter tensor as {name, rows, cols, row-major data}.
// The per-generator-step log is not stored.
nlohmann::json CheckpointToJson(const TrainedGan& gan);
// Throws on a foreign format, an unsupported version or a parameter whose
// name or shape does not match the network the config describes.
TrainedGan CheckpointFromJson(const nlohmann::json& j);

void SaveCheckpoint(const TrainedGan& gan, const std::string& path);
TrainedGan LoadCheckpoint(const std::string& path);

}  // namespace imbal::gan

#endif  // IMBAL_GAN_CHECKPOINT_H_
