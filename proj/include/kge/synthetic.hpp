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

#include "kge/dataset.hpp"
#include "kge/rng.hpp"

namespace kge {

// Synthetic graph with known relation structure: one symmetric relation,
// one inverse pair, one composition triple r_comp = r_left then r_right,
// plus generic distractors. Used to verify that trained rotations recover
// the planted patterns.
struct PatternGraphConfig {
  size_t entities = 500;
  size_t sym_pairs = 300;          // both directions added
  size_t inv_pairs = 550;          // one triple per relation of the pair
  size_t chains = 550;             // (x,y), (y,z), (x,z)
  size_t distractor_triples = 550; // per distractor relation
  double valid_fraction = 0.04;
  double test_fraction = 0.08;
  uint64_t seed = 0;
};

struct PatternGraphInfo {
  RelationId sym, inv_a, inv_b, comp, comp_left, comp_right;
  RelationId distractor1, distractor2;
};

KnowledgeGraph make_pattern_graph(const PatternGraphConfig& cfg,
                                  PatternGraphInfo* info = nullptr);

// Countries-style composition benchmark: 244 countries in 23 subregions in
// 5 regions, locatedIn edges up the hierarchy plus a symmetric neighbor
// graph that never crosses region boundaries. Held-out countries keep, per
// task, progressively less location evidence:
//   S1: the country's region edge is held out (subregion edge kept)
//   S2: both the region and subregion edges are held out
//   S3: additionally, the region edges of all its neighbors are removed
enum class CountriesTask { S1, S2, S3 };

KnowledgeGraph make_countries(CountriesTask task, uint64_t seed);

// Random graph with the given split sizes; triples are distinct and uniform.
// Stands in for benchmark-scale datasets in loader/training smoke tests.
KnowledgeGraph make_random_graph(size_t entities, size_t relations,
                                 size_t train, size_t valid, size_t test,
                                 uint64_t seed);

}  // namespace kge
