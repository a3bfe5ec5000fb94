/*
 * Copyright 2026 The kge Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "kge/loss.hpp"
#include "kge/model.hpp"

namespace kge {

struct TrainConfig {
  ModelKind model = ModelKind::RotatE;
  int k = 500;               // embedding dimension
  int batch_size = 1024;     // b
  int negatives = 64;        // n per positive
  double alpha = 1.0;        // adversarial temperature
  double gamma = 12.0;       // fixed margin
  LossKind loss = LossKind::SelfAdversarial;
  double lr = 1e-4;
  int64_t max_steps = 10000;
  int64_t valid_every = 1000;   // 0 disables validation passes
  uint64_t seed = 0;
  double modulus_c = 1.0;       // pRotatE entity modulus C
  int workers = 1;
  double init_width = 0.0;      // entity init half-width; 0 = (gamma + 2) / k
  int64_t lr_decay_step = -1;   // -1 = max_steps / 2; 0 = no decay
  bool filter_negatives = true;

  double resolved_init_width() const {
    return init_width > 0.0 ? init_width : (gamma + 2.0) / double(k);
  }
  int64_t resolved_decay_step() const {
    return lr_decay_step < 0 ? max_steps / 2 : lr_decay_step;
  }
};

// Throws ParseError when a field violates its invariants.
void validate(const TrainConfig& cfg);

// Layered resolution: built-in defaults <- file (if given) <- overrides.
// Unknown keys raise UnknownKey; bad values raise ParseError.
TrainConfig load_config(
    const std::optional<std::filesystem::path>& file,
    const std::vector<std::pair<std::string, std::string>>& overrides = {});

void apply_override(TrainConfig& cfg, const std::string& key,
                    const std::string& value);

std::string config_to_json(const TrainConfig& cfg, int indent = -1);
TrainConfig config_from_json(const std::string& text);

}  // namespace kge
