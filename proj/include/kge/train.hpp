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

#include <functional>
#include <optional>

#include "kge/config.hpp"
#include "kge/dataset.hpp"
#include "kge/optim.hpp"
#include "kge/rng.hpp"

namespace kge {

struct ValidRecord {
  int64_t step;
  double loss;  // training batch loss at the validation step
  double mr, mrr, h1, h3, h10;
};

struct Checkpoint {
  TrainConfig config;
  EmbeddingTable table;  // final parameters
  OptimizerState opt;
  uint64_t step = 0;
  Rng::State rng_state{};
  std::vector<ValidRecord> history;
  double best_mrr = -1.0;
  int64_t best_step = -1;
  std::optional<EmbeddingTable> best_table;  // best-valid snapshot
  std::vector<double> loss_curve;            // in-memory only, not persisted

  // Parameters to evaluate with: the best-valid snapshot when one exists.
  const EmbeddingTable& eval_table() const {
    return best_table ? *best_table : table;
  }
};

// Entity components uniform in [-u, u] with u = (gamma + 2) / k by default;
// relation phases (and pRotatE entity phases, after wrapping) land in
// [0, 2pi). Draws consume `rng` in storage order.
EmbeddingTable init_embeddings(const TrainConfig& cfg, Rng& rng,
                               size_t num_entities, size_t num_relations);

// Mini-batch training: sample positives, corrupt alternating sides, score,
// apply the configured loss averaged over the batch, backpropagate, Adam
// update. Validation runs every valid_every steps (and at the final step);
// the best-valid parameters are snapshotted into the checkpoint.
//
// Results are bit-identical for any worker count: per-positive gradient
// contributions are merged in batch order by a single writer.
Checkpoint train(const KnowledgeGraph& graph, const TrainConfig& cfg,
                 const std::function<void(const ValidRecord&)>& on_valid = {});

}  // namespace kge
