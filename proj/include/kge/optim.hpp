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

#include <cstdint>
#include <vector>

#include "kge/model.hpp"
#include "kge/parallel.hpp"

namespace kge {

struct AdamConfig {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct OptimizerState {
  AdamConfig cfg;
  uint64_t step = 0;
  std::vector<double> m_entity, v_entity;
  std::vector<double> m_relation, v_relation;

  static OptimizerState like(const EmbeddingTable& table,
                             AdamConfig cfg = {}) {
    OptimizerState st;
    st.cfg = cfg;
    st.m_entity.assign(table.entity.size(), 0.0);
    st.v_entity.assign(table.entity.size(), 0.0);
    st.m_relation.assign(table.relation.size(), 0.0);
    st.v_relation.assign(table.relation.size(), 0.0);
    return st;
  }
};

// One bias-corrected Adam step over the dense gradients. Phase parameters
// (rotation-model relation rows; phase-model entity rows) are re-wrapped
// into [0, 2pi) after the update.
void adam_step(EmbeddingTable& table, std::span<const double> grad_entity,
               std::span<const double> grad_relation, OptimizerState& state,
               double lr, ThreadPool* pool = nullptr);

}  // namespace kge
