// include/sedkit/config.h

// Copyright 2026  The sedkit Authors

// See the top-level COPYING file for clarification regarding multiple authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef SEDKIT_CONFIG_H_
#define SEDKIT_CONFIG_H_

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sedkit/augment.h"
#include "sedkit/evaluate.h"
#include "sedkit/frontend.h"
#include "sedkit/harness.h"

namespace sedkit {

using Json = nlohmann::ordered_json;

Json ToJson(const AugmentConfig &cfg);
/// Missing fields keep their defaults; unknown fields are rejected.
AugmentConfig AugmentConfigFromJson(const Json &j);

Json ToJson(const ScenarioConfig &sc);
ScenarioConfig ScenarioConfigFromJson(const Json &j);

Json ToJson(const SceneSpec &spec);
SceneSpec SceneSpecFromJson(const Json &j);

Json ToJson(const ToyDetectorConfig &cfg);
ToyDetectorConfig ToyDetectorConfigFromJson(const Json &j);

Json ToJson(const FrontendConfig &cfg);
FrontendConfig FrontendConfigFromJson(const Json &j);

/// Every shipped preset, in a stable order.
const std::vector<NamedPreset> &Presets();
/// Throws InvalidConfig for an unknown name.
AugmentConfig FindPreset(const std::string &name);

/// The sixteen label-preserving augmentation settings compared in the
/// augmentation ablation (noise, frequency masking, FilterAugment, combos).
std::vector<NamedPreset> AugmentationGrid();

/// Grid file: either {"presets": ["name", ...]} or
/// {"presets": [{"name": ..., "config": {...}}, ...]} (entries may mix).
std::vector<NamedPreset> GridFromJson(const Json &j);

}  // namespace sedkit

#endif  // SEDKIT_CONFIG_H_
