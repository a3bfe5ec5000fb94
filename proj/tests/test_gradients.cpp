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
#include <doctest.h>

#include "kge/sampling.hpp"
#include "support/helpers.hpp"

using namespace kge;
using namespace kge::test;

namespace {

// One random instance: tiny table, one positive, up to 4 negatives sharing
// the corruption side, adversarial weights frozen from the current scores.
GradCheckResult run_instance(ModelKind model, LossKind loss, Rng& rng) {
  const double gamma = 0.5 + rng.uniform() * 3.0;
  while (true) {
    const int k = 2 + int(rng.below(7));           // <= 8
    const size_t entities = 4 + rng.below(3);
    const size_t relations = 2;
    auto table = random_table(model, k, entities, relations, rng);

    Triple pos{EntityId(rng.below(entities)), RelationId(rng.below(relations)),
               EntityId(rng.below(entities))};
    Side side = rng.below(2) == 0 ? Side::Head : Side::Tail;
    const size_t n = 1 + rng.below(4);  // <= 4
    std::vector<EntityId> negatives(n);
    for (auto& e : negatives) e = EntityId(rng.below(entities));
    BatchExample ex{pos, side, negatives};
    if (fd_near_kink(table, ex, loss, gamma, 5e-2)) continue;

    std::vector<double> dist(n + 1);
    forward_distances(table, ex, dist);
    std::vector<double> weights;
    if (loss == LossKind::SelfAdversarial || loss == LossKind::MarginRanking) {
      std::vector<double> scores(n);
      for (size_t j = 0; j < n; ++j) scores[j] = -dist[j + 1];
      weights = self_adversarial_weights(scores, 0.7);
    }
    return check_gradients(table, ex, loss, weights, gamma);
  }
}

}  // namespace

TEST_CASE("analytic gradients match central differences for all models") {
  Rng rng(1234);
  for (ModelKind model :
       {ModelKind::RotatE, ModelKind::PRotatE, ModelKind::TransE,
        ModelKind::DistMult, ModelKind::ComplEx}) {
    for (LossKind loss : {LossKind::NegativeSampling,
                          LossKind::SelfAdversarial,
                          LossKind::MarginRanking}) {
      CAPTURE(model_name(model));
      CAPTURE(loss_name(loss));
      double worst = 0.0;
      for (int it = 0; it < 20; ++it) {
        auto res = run_instance(model, loss, rng);
        worst = std::max(worst, res.class_rel);
      }
      CHECK(worst <= 1e-4);
    }
  }
}

TEST_CASE("gradient sink covers both corruption sides") {
  Rng rng(55);
  auto table = random_table(ModelKind::RotatE, 4, 5, 2, rng);
  for (Side side : {Side::Head, Side::Tail}) {
    std::vector<EntityId> negs{0, 3};
    BatchExample ex{Triple{1, 0, 2}, side, negs};
    std::vector<double> dl_dd{0.5, -0.25, -0.25};
    GradSink sink;
    backward_example(table, ex, dl_dd, sink);
    // positive's two entities plus each negative appear in the sink
    CHECK(sink.entity_ids.size() == 4);
    CHECK(sink.relation_ids.size() == 1);
  }
}
