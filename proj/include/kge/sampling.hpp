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

#include <span>
#include <vector>

#include "kge/dataset.hpp"
#include "kge/rng.hpp"

namespace kge {

enum class SampleMode { Uniform, SelfAdversarial };

struct SamplerConfig {
  int n = 1;            // negatives per positive
  double alpha = 1.0;   // softmax temperature
  SampleMode mode = SampleMode::Uniform;
  bool filter_true = true;
};

// One positive with its corrupted candidates and simplex weights.
struct NegativeBatch {
  Triple positive;
  Side side = Side::Tail;
  std::vector<Triple> negatives;
  std::vector<double> weights;
  bool exhausted_retries = false;
};

struct CorruptResult {
  std::vector<Triple> negatives;
  // True when filtering hit the retry bound for at least one slot and a
  // possibly-true candidate was accepted (near-complete relation).
  bool exhausted_retries = false;
};

// Draws n corruptions of `positive` on `side`, entities uniform over E.
// With filter_true, candidates present in the graph's filter index are
// resampled up to max_retries times each.
CorruptResult corrupt(const Triple& positive, Side side, int n,
                      const KnowledgeGraph& graph, Rng& rng, bool filter_true,
                      int max_retries = 128);

// Softmax of alpha * score over one negative batch, max-shifted for
// stability. These weights are treated as constants by the losses; no
// gradient flows through them.
std::vector<double> self_adversarial_weights(std::span<const double> neg_scores,
                                             double alpha);

}  // namespace kge
