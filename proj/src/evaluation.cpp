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
#include "kge/evaluation.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace kge {

RankResult rank_triple(const EmbeddingTable& table, const Triple& t, Side side,
                       const KnowledgeGraph& graph) {
  CandidateScorer scorer(table, t, side);
  const EntityId true_entity = side == Side::Head ? t.head : t.tail;
  const double s_true = scorer(true_entity);
  size_t above = 0, ties = 0, included = 1;
  Triple cand = t;
  EntityId* slot = side == Side::Head ? &cand.head : &cand.tail;
  const size_t num_entities = graph.num_entities();
  for (EntityId e = 0; e < num_entities; ++e) {
    if (e == true_entity) continue;
    *slot = e;
    if (graph.filter.contains(cand)) continue;  // known-true competitor
    double s = scorer(e);
    if (s > s_true)
      ++above;
    else if (s == s_true)
      ++ties;
    ++included;
  }
  return RankResult{t, side, 1.0 + double(above) + 0.5 * double(ties),
                    included};
}

MetricReport aggregate_ranks(std::span<const double> ranks) {
  MetricReport r;
  r.count = ranks.size();
  if (ranks.empty()) return r;
  double mr_sum = 0.0, mrr_sum = 0.0;
  size_t h1 = 0, h3 = 0, h10 = 0;
  for (double rank : ranks) {
    mr_sum += rank;
    mrr_sum += 1.0 / rank;
    if (rank <= 1.0) ++h1;
    if (rank <= 3.0) ++h3;
    if (rank <= 10.0) ++h10;
  }
  r.mr = mr_sum / double(r.count);
  r.mrr = mrr_sum / double(r.count);
  r.hits1 = double(h1) / double(r.count);
  r.hits3 = double(h3) / double(r.count);
  r.hits10 = double(h10) / double(r.count);
  return r;
}

EvalReport evaluate(const EmbeddingTable& table, const KnowledgeGraph& graph,
                    Split split, ThreadPool* pool) {
  const auto& triples = graph.split(split);
  require(!triples.empty(), Err::EmptySplit, "evaluation split is empty");

  EvalReport report;
  report.ranks.resize(2 * triples.size());
  auto rank_range = [&](size_t, size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i) {
      report.ranks[2 * i] = rank_triple(table, triples[i], Side::Head, graph);
      report.ranks[2 * i + 1] =
          rank_triple(table, triples[i], Side::Tail, graph);
    }
  };
  if (pool && pool->workers() > 1) {
    pool->for_chunks(triples.size(), rank_range);
  } else {
    rank_range(0, 0, triples.size());
  }

  std::map<RelationId, RelationCategory> cats;
  if (!graph.train.empty()) cats = relation_categories(graph, Split::Train);

  std::vector<double> all, per_side[2];
  std::vector<double> per_cat[2][4];
  for (const RankResult& rr : report.ranks) {
    all.push_back(rr.rank);
    per_side[int(rr.side)].push_back(rr.rank);
    auto it = cats.find(rr.triple.relation);
    if (it != cats.end())
      per_cat[int(rr.side)][int(it->second.category)].push_back(rr.rank);
  }
  report.overall = aggregate_ranks(all);
  for (int s = 0; s < 2; ++s) {
    report.by_side[s] = aggregate_ranks(per_side[s]);
    for (int c = 0; c < 4; ++c)
      report.by_category[s][c] = aggregate_ranks(per_cat[s][c]);
  }
  return report;
}

double auc_pr(std::vector<std::pair<double, bool>> scored,
              std::vector<PrPoint>* curve) {
  require(!scored.empty(), Err::EmptySplit, "no scored pairs");
  size_t total_pos = 0;
  for (const auto& [s, pos] : scored)
    if (pos) ++total_pos;
  require(total_pos > 0, Err::EmptySplit, "no positive pairs");

  std::stable_sort(scored.begin(), scored.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  if (curve) curve->clear();
  double area = 0.0;
  double prev_recall = 0.0;
  size_t tp = 0, fp = 0, i = 0;
  while (i < scored.size()) {
    double threshold = scored[i].first;
    // consume the whole tie group before emitting a point
    while (i < scored.size() && scored[i].first == threshold) {
      if (scored[i].second)
        ++tp;
      else
        ++fp;
      ++i;
    }
    double precision = double(tp) / double(tp + fp);
    double recall = double(tp) / double(total_pos);
    area += (recall - prev_recall) * precision;
    prev_recall = recall;
    if (curve) curve->push_back(PrPoint{threshold, precision, recall});
  }
  return area;
}

namespace {

bool name_contains_locatedin(const std::string& name) {
  std::string lower;
  lower.reserve(name.size());
  for (char ch : name)
    lower.push_back(char(std::tolower(static_cast<unsigned char>(ch))));
  return lower.find("locatedin") != std::string::npos;
}

RelationId find_located_in(const KnowledgeGraph& graph) {
  for (size_t r = 0; r < graph.num_relations(); ++r)
    if (name_contains_locatedin(graph.relation_names[r])) return RelationId(r);
  fail(Err::NotACountriesGraph, "no locatedIn relation in vocabulary");
}

}  // namespace

std::vector<EntityId> find_countries_regions(const KnowledgeGraph& graph) {
  RelationId located_in = find_located_in(graph);
  std::vector<uint8_t> is_tail(graph.num_entities(), 0);
  std::vector<uint8_t> is_head(graph.num_entities(), 0);
  for (const auto* split : {&graph.train, &graph.valid, &graph.test}) {
    for (const Triple& t : *split) {
      if (t.relation != located_in) continue;
      is_tail[t.tail] = 1;
      is_head[t.head] = 1;
    }
  }
  std::vector<EntityId> regions;
  for (EntityId e = 0; e < graph.num_entities(); ++e)
    if (is_tail[e] && !is_head[e]) regions.push_back(e);
  require(regions.size() == 5, Err::NotACountriesGraph,
          "expected exactly 5 region entities, found " +
              std::to_string(regions.size()));
  return regions;
}

double countries_auc_pr(const EmbeddingTable& table,
                        const KnowledgeGraph& graph,
                        std::span<const EntityId> regions,
                        std::vector<PrPoint>* curve) {
  RelationId located_in = find_located_in(graph);
  std::vector<std::pair<double, bool>> pooled;
  for (const Triple& t : graph.test) {
    if (t.relation != located_in) continue;
    bool region_query =
        std::find(regions.begin(), regions.end(), t.tail) != regions.end();
    if (!region_query) continue;
    CandidateScorer scorer(table, t, Side::Tail);
    for (EntityId region : regions)
      pooled.emplace_back(scorer(region), region == t.tail);
  }
  require(!pooled.empty(), Err::NotACountriesGraph,
          "test split has no locatedIn region queries");
  return auc_pr(std::move(pooled), curve);
}

double countries_auc_pr(const EmbeddingTable& table,
                        const KnowledgeGraph& graph,
                        std::vector<PrPoint>* curve) {
  auto regions = find_countries_regions(graph);
  return countries_auc_pr(table, graph, regions, curve);
}

}  // namespace kge
