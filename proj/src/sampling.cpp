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
#include "kge/sampling.hpp"

#include <algorithm>
#include <cmath>

namespace kge {

CorruptResult corrupt(const Triple& positive, Side side, int n,
                      const KnowledgeGraph& graph, Rng& rng, bool filter_true,
                      int max_retries) {
  require(n >= 1, Err::ShapeMismatch, "need at least one negative");
  const uint64_t num_entities = graph.num_entities();
  require(num_entities > 0, Err::EmptySplit, "graph has no entities");
  CorruptResult out;
  out.negatives.reserve(n);
  for (int i = 0; i < n; ++i) {
    Triple cand = positive;
    EntityId* slot = side == Side::Head ? &cand.head : &cand.tail;
    *slot = EntityId(rng.below(num_entities));
    if (filter_true) {
      int tries = 0;
      while (graph.filter.contains(cand) && tries < max_retries) {
        *slot = EntityId(rng.below(num_entities));
        ++tries;
      }
      if (graph.filter.contains(cand)) out.exhausted_retries = true;
    }
    out.negatives.push_back(cand);
  }
  return out;
}

std::vector<double> self_adversarial_weights(std::span<const double> neg_scores,
                                             double alpha) {
  std::vector<double> w(neg_scores.size());
  if (neg_scores.empty()) return w;
  double hi = alpha * neg_scores[0];
  for (double f : neg_scores) hi = std::max(hi, alpha * f);
  double sum = 0.0;
  for (size_t i = 0; i < neg_scores.size(); ++i) {
    w[i] = std::exp(alpha * neg_scores[i] - hi);
    sum += w[i];
  }
  for (double& x : w) x /= sum;
  return w;
}

}  // namespace kge
