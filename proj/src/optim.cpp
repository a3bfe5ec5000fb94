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
#include "kge/optim.hpp"

#include <cmath>

namespace kge {
namespace {

void adam_update(double* p, const double* g, double* m, double* v,
                 size_t begin, size_t end, const AdamConfig& cfg, double lr,
                 double bc1, double bc2) {
  for (size_t i = begin; i < end; ++i) {
    m[i] = cfg.beta1 * m[i] + (1.0 - cfg.beta1) * g[i];
    v[i] = cfg.beta2 * v[i] + (1.0 - cfg.beta2) * g[i] * g[i];
    double mhat = m[i] / bc1;
    double vhat = v[i] / bc2;
    p[i] -= lr * mhat / (std::sqrt(vhat) + cfg.eps);
  }
}

void wrap_range(double* p, size_t begin, size_t end) {
  for (size_t i = begin; i < end; ++i) p[i] = wrap_phase(p[i]);
}

}  // namespace

void adam_step(EmbeddingTable& table, std::span<const double> grad_entity,
               std::span<const double> grad_relation, OptimizerState& state,
               double lr, ThreadPool* pool) {
  require(grad_entity.size() == table.entity.size() &&
              grad_relation.size() == table.relation.size() &&
              state.m_entity.size() == table.entity.size() &&
              state.m_relation.size() == table.relation.size(),
          Err::ShapeMismatch, "gradient/state shapes");
  state.step += 1;
  const double bc1 = 1.0 - std::pow(state.cfg.beta1, double(state.step));
  const double bc2 = 1.0 - std::pow(state.cfg.beta2, double(state.step));

  const bool wrap_relations =
      table.model == ModelKind::RotatE || table.model == ModelKind::PRotatE;
  const bool wrap_entities = table.model == ModelKind::PRotatE;

  auto update_block = [&](std::vector<double>& params,
                          std::span<const double> grads,
                          std::vector<double>& m, std::vector<double>& v,
                          bool wrap) {
    auto body = [&](size_t, size_t begin, size_t end) {
      adam_update(params.data(), grads.data(), m.data(), v.data(), begin, end,
                  state.cfg, lr, bc1, bc2);
      if (wrap) wrap_range(params.data(), begin, end);
    };
    if (pool && pool->workers() > 1) {
      pool->for_chunks(params.size(), body);
    } else {
      body(0, 0, params.size());
    }
  };
  update_block(table.entity, grad_entity, state.m_entity, state.v_entity,
               wrap_entities);
  update_block(table.relation, grad_relation, state.m_relation,
               state.v_relation, wrap_relations);
}

}  // namespace kge
