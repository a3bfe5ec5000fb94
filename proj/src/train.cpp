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
#include "kge/train.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>

#include "kge/evaluation.hpp"
#include "kge/sampling.hpp"

namespace kge {

EmbeddingTable init_embeddings(const TrainConfig& cfg, Rng& rng,
                               size_t num_entities, size_t num_relations) {
  validate(cfg);
  EmbeddingTable table;
  table.model = cfg.model;
  table.k = cfg.k;
  table.modulus_c = cfg.modulus_c;
  table.num_entities = num_entities;
  table.num_relations = num_relations;
  table.allocate();

  const double u = cfg.resolved_init_width();
  for (double& x : table.entity) x = rng.uniform(-u, u);
  if (cfg.model == ModelKind::PRotatE)
    for (double& x : table.entity) x = wrap_phase(x);

  const bool phase_relations =
      cfg.model == ModelKind::RotatE || cfg.model == ModelKind::PRotatE;
  for (double& x : table.relation)
    x = phase_relations ? rng.uniform() * kTwoPi : rng.uniform(-u, u);
  return table;
}

namespace {

// Scratch owned by one worker slot.
struct Slot {
  std::vector<EntityId> negatives;
  std::vector<double> dist;     // [positive, negatives...]
  std::vector<double> weights;  // n
  std::vector<double> dl_dd;    // 1 + n
  GradSink sink;
  double loss = 0.0;
  bool exhausted = false;
};

// stream tags for derived generators
constexpr uint64_t kPosStream = 0x706f73;  // positive sampling
constexpr uint64_t kNegStream = 0x6e6567;  // per-example corruption

void process_example(const EmbeddingTable& table, const KnowledgeGraph& graph,
                     const TrainConfig& cfg, const Rng& neg_root,
                     uint64_t example_index, const Triple& positive, Side side,
                     Slot& slot) {
  const int n = cfg.negatives;
  Rng rng = neg_root.fork(example_index);
  auto corrupted =
      corrupt(positive, side, n, graph, rng, cfg.filter_negatives);
  slot.exhausted = corrupted.exhausted_retries;
  slot.negatives.resize(n);
  for (int j = 0; j < n; ++j)
    slot.negatives[j] = side == Side::Head ? corrupted.negatives[j].head
                                           : corrupted.negatives[j].tail;

  BatchExample ex{positive, side, slot.negatives};
  slot.dist.resize(n + 1);
  forward_distances(table, ex, slot.dist);

  std::span<const double> neg_d(slot.dist.data() + 1, size_t(n));
  slot.weights.clear();
  if (cfg.loss == LossKind::SelfAdversarial ||
      (cfg.loss == LossKind::MarginRanking && cfg.alpha > 0.0)) {
    // weights come from the current scores f = -d, detached from the graph
    std::vector<double> neg_scores(n);
    for (int j = 0; j < n; ++j) neg_scores[j] = -neg_d[j];
    slot.weights = self_adversarial_weights(neg_scores, cfg.alpha);
  } else if (cfg.loss == LossKind::MarginRanking) {
    slot.weights.assign(size_t(n), 1.0 / double(n));
  }

  std::span<const double> w(slot.weights);
  slot.loss = loss_value(cfg.loss, slot.dist[0], neg_d, w, cfg.gamma);

  slot.dl_dd.resize(n + 1);
  loss_grad_distances(cfg.loss, slot.dist[0], neg_d, w, cfg.gamma, slot.dl_dd);
  const double scale = 1.0 / double(cfg.batch_size);
  for (double& c : slot.dl_dd) c *= scale;

  slot.sink.clear();
  backward_example(table, ex, slot.dl_dd, slot.sink);
}

void merge_sink(const GradSink& sink, const EmbeddingTable& table,
                std::vector<double>& grad_entity,
                std::vector<double>& grad_relation) {
  const size_t ew = table.entity_width();
  for (size_t r = 0; r < sink.entity_ids.size(); ++r) {
    double* dst = grad_entity.data() + size_t(sink.entity_ids[r]) * ew;
    const double* src = sink.entity_data.data() + r * ew;
    for (size_t i = 0; i < ew; ++i) dst[i] += src[i];
  }
  const size_t rw = table.relation_width();
  for (size_t r = 0; r < sink.relation_ids.size(); ++r) {
    double* dst = grad_relation.data() + size_t(sink.relation_ids[r]) * rw;
    const double* src = sink.relation_data.data() + r * rw;
    for (size_t i = 0; i < rw; ++i) dst[i] += src[i];
  }
}

}  // namespace

Checkpoint train(const KnowledgeGraph& graph, const TrainConfig& cfg,
                 const std::function<void(const ValidRecord&)>& on_valid) {
  validate(cfg);
  Checkpoint cp;
  cp.config = cfg;

  Rng init_rng(cfg.seed);
  cp.table =
      init_embeddings(cfg, init_rng, graph.num_entities(), graph.num_relations());
  cp.opt = OptimizerState::like(cp.table);

  Rng pos_rng = init_rng.fork(kPosStream);
  const Rng neg_root = init_rng.fork(kNegStream);

  if (cfg.max_steps > 0)
    require(!graph.train.empty(), Err::EmptySplit, "train split is empty");

  ThreadPool pool(cfg.workers);
  const int W = pool.workers();
  const size_t b = size_t(cfg.batch_size);

  std::vector<double> grad_entity(cp.table.entity.size(), 0.0);
  std::vector<double> grad_relation(cp.table.relation.size(), 0.0);
  std::vector<Slot> slots(W);
  std::vector<size_t> batch_idx(b);

  const int64_t decay_step = cfg.resolved_decay_step();
  size_t exhausted_batches = 0;

  for (int64_t step = 1; step <= cfg.max_steps; ++step) {
    const double lr =
        (decay_step > 0 && step > decay_step) ? cfg.lr * 0.1 : cfg.lr;
    for (size_t i = 0; i < b; ++i)
      batch_idx[i] = size_t(pos_rng.below(graph.train.size()));

    auto zero = [&](size_t, size_t beginE, size_t endE) {
      std::memset(grad_entity.data() + beginE, 0,
                  (endE - beginE) * sizeof(double));
    };
    pool.for_chunks(grad_entity.size(), zero);
    std::memset(grad_relation.data(), 0,
                grad_relation.size() * sizeof(double));

    double batch_loss = 0.0;
    bool any_exhausted = false;
    const uint64_t step_base = uint64_t(step - 1) * b;
    // Rounds of W examples: workers compute in parallel, the caller merges
    // in batch order so results do not depend on the worker count.
    for (size_t base = 0; base < b; base += size_t(W)) {
      const size_t count = std::min(size_t(W), b - base);
      pool.run([&](int w) {
        if (size_t(w) >= count) return;
        const size_t i = base + size_t(w);
        const Triple& positive = graph.train[batch_idx[i]];
        const Side side = (i % 2 == 0) ? Side::Head : Side::Tail;
        process_example(cp.table, graph, cfg, neg_root, step_base + i,
                        positive, side, slots[w]);
      });
      for (size_t w = 0; w < count; ++w) {
        merge_sink(slots[w].sink, cp.table, grad_entity, grad_relation);
        batch_loss += slots[w].loss;
        any_exhausted |= slots[w].exhausted;
      }
    }
    batch_loss /= double(b);
    require(std::isfinite(batch_loss), Err::Divergence,
            "non-finite loss at step " + std::to_string(step));
    cp.loss_curve.push_back(batch_loss);
    if (any_exhausted) ++exhausted_batches;

    adam_step(cp.table, grad_entity, grad_relation, cp.opt, lr, &pool);

    const bool last = step == cfg.max_steps;
    if (cfg.valid_every > 0 && !graph.valid.empty() &&
        (step % cfg.valid_every == 0 || last)) {
      EvalReport report = evaluate(cp.table, graph, Split::Valid, &pool);
      ValidRecord rec{step,
                      batch_loss,
                      report.overall.mr,
                      report.overall.mrr,
                      report.overall.hits1,
                      report.overall.hits3,
                      report.overall.hits10};
      cp.history.push_back(rec);
      if (on_valid) on_valid(rec);
      if (rec.mrr > cp.best_mrr) {
        cp.best_mrr = rec.mrr;
        cp.best_step = step;
        cp.best_table = cp.table;
      }
    }
    cp.step = uint64_t(step);
  }
  if (exhausted_batches > 0) {
    std::fprintf(stderr,
                 "warning: corruption hit the retry bound in %zu step(s); "
                 "some negatives may be true triples\n",
                 exhausted_batches);
  }
  cp.rng_state = pos_rng.state();
  return cp;
}

}  // namespace kge
