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
#include "kge/model.hpp"
#include "kge/parallel.hpp"

namespace kge {

struct RankResult {
  Triple triple;
  Side side;
  double rank;            // fractional under tie-averaging
  size_t num_candidates;  // surviving candidates, test triple included
};

struct MetricReport {
  double mr = 0.0;
  double mrr = 0.0;
  double hits1 = 0.0;
  double hits3 = 0.0;
  double hits10 = 0.0;
  size_t count = 0;
};

struct EvalReport {
  MetricReport overall;
  MetricReport by_side[2];              // [Side]
  MetricReport by_category[2][4];       // [Side][Category]
  std::vector<RankResult> ranks;        // triple order, head then tail
};

// Filtered rank of one test triple on one corruption side: candidates are
// all entity substitutions minus those present in the filter index (the
// triple itself always competes); rank = 1 + #strictly-better +
// 0.5 * #exact-ties.
RankResult rank_triple(const EmbeddingTable& table, const Triple& t, Side side,
                       const KnowledgeGraph& graph);

// Ranks both sides of every triple in the split and aggregates MR, MRR and
// Hits@{1,3,10} overall, per side, and per relation category (categories
// computed on the train split).
EvalReport evaluate(const EmbeddingTable& table, const KnowledgeGraph& graph,
                    Split split, ThreadPool* pool = nullptr);

// MR/MRR/H@N over a rank list, accumulated in order.
MetricReport aggregate_ranks(std::span<const double> ranks);

struct PrPoint {
  double threshold;
  double precision;
  double recall;
};

// Area under the precision-recall curve of pooled (score, label) pairs by
// descending-score sweep with step interpolation; ties form one threshold.
double auc_pr(std::vector<std::pair<double, bool>> scored,
              std::vector<PrPoint>* curve = nullptr);

// The five region entities of a Countries-style graph: tails of locatedIn
// triples that never occur as locatedIn heads. Throws NotACountriesGraph
// unless exactly five such entities exist.
std::vector<EntityId> find_countries_regions(const KnowledgeGraph& graph);

// Scores (country, locatedIn, region) for all regions per held-out query in
// the test split and pools them into one PR sweep.
double countries_auc_pr(const EmbeddingTable& table,
                        const KnowledgeGraph& graph,
                        std::span<const EntityId> regions,
                        std::vector<PrPoint>* curve = nullptr);
double countries_auc_pr(const EmbeddingTable& table,
                        const KnowledgeGraph& graph,
                        std::vector<PrPoint>* curve = nullptr);

}  // namespace kge
