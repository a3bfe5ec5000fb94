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

#include <limits>

#include "kge/checkpoint.hpp"
#include "kge/synthetic.hpp"
#include "kge/train.hpp"
#include "support/helpers.hpp"

using namespace kge;
using namespace kge::test;

namespace {

TrainConfig small_config(ModelKind model, uint64_t seed) {
  TrainConfig cfg;
  cfg.model = model;
  cfg.k = 8;
  cfg.batch_size = 16;
  cfg.negatives = 4;
  cfg.alpha = 1.0;
  cfg.gamma = 4.0;
  cfg.loss = LossKind::SelfAdversarial;
  cfg.lr = 5e-3;
  cfg.max_steps = 50;
  cfg.valid_every = 0;
  cfg.seed = seed;
  return cfg;
}

uint64_t table_digest(const EmbeddingTable& t) {
  auto bytes = [](const std::vector<double>& v) {
    return std::span<const uint8_t>(
        reinterpret_cast<const uint8_t*>(v.data()), v.size() * sizeof(double));
  };
  return fnv1a64(bytes(t.relation), fnv1a64(bytes(t.entity)));
}

}  // namespace

TEST_CASE("train: loss decreases on a small fixture") {
  auto g = make_random_graph(12, 2, 20, 4, 4, 42);
  auto cfg = small_config(ModelKind::RotatE, 1);
  auto cp = train(g, cfg);
  REQUIRE(cp.loss_curve.size() == 50);
  CHECK(cp.loss_curve.back() < cp.loss_curve.front());
}

TEST_CASE("train: zero steps returns the initialization") {
  auto g = make_random_graph(12, 2, 20, 4, 4, 42);
  auto cfg = small_config(ModelKind::TransE, 5);
  cfg.max_steps = 0;
  auto cp = train(g, cfg);
  Rng rng(cfg.seed);
  auto init = init_embeddings(cfg, rng, g.num_entities(), g.num_relations());
  CHECK(cp.table.entity == init.entity);
  CHECK(cp.table.relation == init.relation);
  CHECK(cp.step == 0);
}

TEST_CASE("train: identical seed and config give identical checkpoints") {
  auto g = make_random_graph(30, 3, 100, 10, 10, 8);
  auto cfg = small_config(ModelKind::DistMult, 77);
  auto a = train(g, cfg);
  auto b = train(g, cfg);
  CHECK(table_digest(a.table) == table_digest(b.table));
  CHECK(a.table.entity == b.table.entity);
  CHECK(a.rng_state == b.rng_state);
}

TEST_CASE("train: results do not depend on the worker count") {
  auto g = make_random_graph(30, 3, 100, 10, 10, 8);
  auto cfg = small_config(ModelKind::RotatE, 99);
  cfg.valid_every = 25;
  auto seq = train(g, cfg);
  cfg.workers = 2;
  auto par = train(g, cfg);
  CHECK(seq.table.entity == par.table.entity);
  CHECK(seq.table.relation == par.table.relation);
  REQUIRE(seq.history.size() == par.history.size());
  for (size_t i = 0; i < seq.history.size(); ++i)
    CHECK(seq.history[i].mrr == par.history[i].mrr);
}

TEST_CASE("train: every loss kind and model runs and stays finite") {
  auto g = make_random_graph(20, 2, 60, 6, 6, 21);
  for (ModelKind m : {ModelKind::RotatE, ModelKind::PRotatE, ModelKind::TransE,
                      ModelKind::DistMult, ModelKind::ComplEx}) {
    for (LossKind l : {LossKind::NegativeSampling, LossKind::SelfAdversarial,
                       LossKind::MarginRanking}) {
      auto cfg = small_config(m, 3);
      cfg.loss = l;
      cfg.max_steps = 10;
      auto cp = train(g, cfg);
      for (double loss : cp.loss_curve) CHECK(std::isfinite(loss));
    }
  }
}

TEST_CASE("train: divergent settings raise an error") {
  auto g = make_random_graph(12, 2, 20, 4, 4, 42);
  auto cfg = small_config(ModelKind::RotatE, 1);
  cfg.gamma = std::numeric_limits<double>::infinity();
  cfg.init_width = 0.05;  // keep initialization finite
  try {
    train(g, cfg);
    FAIL("expected Divergence");
  } catch (const Error& e) {
    CHECK(e.code() == Err::Divergence);
  }
}

TEST_CASE("train: best-valid snapshot is retained") {
  auto g = make_random_graph(20, 2, 80, 12, 12, 5);
  auto cfg = small_config(ModelKind::TransE, 11);
  cfg.max_steps = 40;
  cfg.valid_every = 10;
  auto cp = train(g, cfg);
  REQUIRE(cp.best_table.has_value());
  CHECK(cp.best_step >= 10);
  CHECK(cp.best_mrr >= 0.0);
  REQUIRE(cp.history.size() == 4);
  double best = -1.0;
  for (const auto& rec : cp.history) best = std::max(best, rec.mrr);
  CHECK(cp.best_mrr == doctest::Approx(best));
}

TEST_CASE("train: symmetric pair separates entities while fitting both facts") {
  // two entities linked both ways by one relation
  KnowledgeGraph g;
  g.entity_names = {"a", "b"};
  g.relation_names = {"r"};
  g.train = {{0, 0, 1}, {1, 0, 0}};
  g.rebuild_filter();

  TrainConfig cfg;
  cfg.model = ModelKind::RotatE;
  cfg.k = 6;
  cfg.batch_size = 8;
  cfg.negatives = 1;
  cfg.alpha = 0.5;
  cfg.gamma = 2.0;
  cfg.loss = LossKind::SelfAdversarial;
  cfg.lr = 2e-2;
  cfg.max_steps = 400;
  cfg.valid_every = 0;
  cfg.seed = 4;
  cfg.filter_negatives = false;  // only two entities exist
  auto cp = train(g, cfg);

  auto h = cp.table.entity_row(0);
  auto t = cp.table.entity_row(1);
  ComplexVector a{{h.begin(), h.begin() + 6}, {h.begin() + 6, h.end()}};
  ComplexVector b{{t.begin(), t.begin() + 6}, {t.begin() + 6, t.end()}};
  auto r_row = cp.table.relation_row(0);
  PhaseVector r{{r_row.begin(), r_row.end()}};

  CHECK(rotate_distance(a, r, b) < cfg.gamma);
  CHECK(rotate_distance(b, r, a) < cfg.gamma);
  double gap = 0.0;
  for (int i = 0; i < 6; ++i)
    gap += std::hypot(a.re[i] - b.re[i], a.im[i] - b.im[i]);
  CHECK(gap > 1e-2);  // entities remain distinguishable
}

TEST_CASE("train: empty train split is rejected when steps requested") {
  KnowledgeGraph g;
  g.entity_names = {"a"};
  g.relation_names = {"r"};
  auto cfg = small_config(ModelKind::TransE, 2);
  try {
    train(g, cfg);
    FAIL("expected EmptySplit");
  } catch (const Error& e) {
    CHECK(e.code() == Err::EmptySplit);
  }
}
