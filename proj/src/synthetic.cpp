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
#include "kge/synthetic.hpp"

#include <algorithm>
#include <cstdio>
#include <unordered_set>

namespace kge {
namespace {

std::string numbered(const char* prefix, size_t i, int width) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s%0*zu", prefix, width, i);
  return buf;
}

template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (size_t i = v.size(); i > 1; --i)
    std::swap(v[i - 1], v[rng.below(i)]);
}

}  // namespace

KnowledgeGraph make_pattern_graph(const PatternGraphConfig& cfg,
                                  PatternGraphInfo* info) {
  KnowledgeGraph g;
  const size_t n = cfg.entities;
  g.entity_names.reserve(n);
  for (size_t i = 0; i < n; ++i) g.entity_names.push_back(numbered("e", i, 3));
  g.relation_names = {"sym",  "inv_a",     "inv_b",     "comp",
                      "left", "right",     "dist_a",    "dist_b"};
  PatternGraphInfo ids{0, 1, 2, 3, 4, 5, 6, 7};
  if (info) *info = ids;

  Rng rng(cfg.seed ^ 0x7061747465726eULL);
  std::unordered_set<uint64_t> seen;
  std::vector<Triple> all;
  auto add = [&](EntityId h, RelationId r, EntityId t) {
    Triple triple{h, r, t};
    if (seen.insert(triple_key(triple)).second) all.push_back(triple);
  };

  for (size_t i = 0; i < cfg.sym_pairs; ++i) {
    EntityId a = EntityId(rng.below(n)), b = EntityId(rng.below(n));
    if (a == b) continue;
    add(a, ids.sym, b);
    add(b, ids.sym, a);
  }
  for (size_t i = 0; i < cfg.inv_pairs; ++i) {
    EntityId a = EntityId(rng.below(n)), b = EntityId(rng.below(n));
    if (a == b) continue;
    add(a, ids.inv_a, b);
    add(b, ids.inv_b, a);
  }
  for (size_t i = 0; i < cfg.chains; ++i) {
    EntityId x = EntityId(rng.below(n)), y = EntityId(rng.below(n)),
             z = EntityId(rng.below(n));
    if (x == y || y == z || x == z) continue;
    add(x, ids.comp_left, y);
    add(y, ids.comp_right, z);
    add(x, ids.comp, z);
  }
  for (RelationId r : {ids.distractor1, ids.distractor2}) {
    for (size_t i = 0; i < cfg.distractor_triples; ++i) {
      EntityId a = EntityId(rng.below(n)), b = EntityId(rng.below(n));
      if (a == b) continue;
      if (seen.count(triple_key(Triple{b, r, a}))) continue;  // keep asymmetric
      add(a, r, b);
    }
  }

  shuffle(all, rng);
  const size_t n_test = size_t(double(all.size()) * cfg.test_fraction);
  const size_t n_valid = size_t(double(all.size()) * cfg.valid_fraction);
  std::vector<Triple> test(all.begin(), all.begin() + n_test);
  std::vector<Triple> valid(all.begin() + n_test,
                            all.begin() + n_test + n_valid);
  g.train.assign(all.begin() + n_test + n_valid, all.end());

  // every entity and relation must stay trainable
  std::vector<bool> ent_seen(n, false), rel_seen(g.relation_names.size(), false);
  for (const Triple& t : g.train) {
    ent_seen[t.head] = ent_seen[t.tail] = true;
    rel_seen[t.relation] = true;
  }
  auto keep_trainable = [&](std::vector<Triple>& split) {
    std::vector<Triple> kept;
    for (const Triple& t : split) {
      if (!ent_seen[t.head] || !ent_seen[t.tail] || !rel_seen[t.relation]) {
        g.train.push_back(t);
        ent_seen[t.head] = ent_seen[t.tail] = true;
        rel_seen[t.relation] = true;
      } else {
        kept.push_back(t);
      }
    }
    split = std::move(kept);
  };
  keep_trainable(valid);
  keep_trainable(test);
  g.valid = std::move(valid);
  g.test = std::move(test);
  g.rebuild_filter();
  return g;
}

KnowledgeGraph make_countries(CountriesTask task, uint64_t seed) {
  constexpr size_t kRegions = 5;
  constexpr size_t kSubregions = 23;
  constexpr size_t kCountries = 244;
  constexpr size_t kHeldOut = 24;  // per split

  KnowledgeGraph g;
  for (size_t i = 0; i < kCountries; ++i)
    g.entity_names.push_back(numbered("country_", i, 3));
  for (size_t i = 0; i < kSubregions; ++i)
    g.entity_names.push_back(numbered("subregion_", i, 2));
  for (size_t i = 0; i < kRegions; ++i)
    g.entity_names.push_back(numbered("region_", i, 1));
  g.relation_names = {"locatedIn", "neighborOf"};
  const RelationId located_in = 0, neighbor_of = 1;
  auto subregion_entity = [&](size_t s) { return EntityId(kCountries + s); };
  auto region_entity = [&](size_t r) {
    return EntityId(kCountries + kSubregions + r);
  };

  Rng rng(seed ^ 0x636f756e74ULL);

  // subregion -> region, countries dealt round-robin into subregions
  std::vector<size_t> region_of_sub(kSubregions);
  for (size_t s = 0; s < kSubregions; ++s) region_of_sub[s] = s % kRegions;
  std::vector<size_t> order(kCountries);
  for (size_t i = 0; i < kCountries; ++i) order[i] = i;
  shuffle(order, rng);
  std::vector<std::vector<EntityId>> members(kSubregions);
  for (size_t i = 0; i < kCountries; ++i)
    members[i % kSubregions].push_back(EntityId(order[i]));

  std::vector<size_t> sub_of(kCountries), region_of(kCountries);
  for (size_t s = 0; s < kSubregions; ++s)
    for (EntityId c : members[s]) {
      sub_of[c] = s;
      region_of[c] = region_of_sub[s];
    }

  // held-out picks: ring positions chosen so every held-out country keeps
  // two in-subregion neighbors that are not themselves held out
  std::vector<EntityId> test_countries, valid_countries;
  size_t largest = 0;
  for (size_t s = 1; s < kSubregions; ++s)
    if (members[s].size() > members[largest].size()) largest = s;
  for (size_t s = 0; s < kSubregions; ++s) {
    const auto& m = members[s];
    test_countries.push_back(m[0]);
    valid_countries.push_back(m[m.size() / 2]);
  }
  while (test_countries.size() < kHeldOut)
    test_countries.push_back(members[largest][2]);
  while (valid_countries.size() < kHeldOut)
    valid_countries.push_back(members[largest][members[largest].size() / 2 + 2]);

  std::vector<bool> held(kCountries, false);
  for (EntityId c : test_countries) held[c] = true;
  for (EntityId c : valid_countries) held[c] = true;

  // neighbor graph: ring per subregion plus in-region links between
  // consecutive subregions (endpoints never held out)
  std::vector<std::pair<EntityId, EntityId>> edges;
  for (size_t s = 0; s < kSubregions; ++s) {
    const auto& m = members[s];
    for (size_t i = 0; i < m.size(); ++i) {
      EntityId a = m[i], b = m[(i + 1) % m.size()];
      if (a != b) edges.emplace_back(a, b);
    }
  }
  std::vector<std::vector<size_t>> region_subs(kRegions);
  for (size_t s = 0; s < kSubregions; ++s)
    region_subs[region_of_sub[s]].push_back(s);
  auto free_member = [&](size_t s) -> EntityId {
    const auto& m = members[s];
    size_t start = rng.below(m.size());
    for (size_t i = 0; i < m.size(); ++i) {
      EntityId c = m[(start + i) % m.size()];
      if (!held[c]) return c;
    }
    return m[start];  // unreachable with >= 8 members per subregion
  };
  for (size_t r = 0; r < kRegions; ++r) {
    const auto& subs = region_subs[r];
    for (size_t i = 0; i + 1 < subs.size(); ++i)
      edges.emplace_back(free_member(subs[i]), free_member(subs[i + 1]));
  }

  std::vector<Triple> location;  // all locatedIn facts
  for (size_t c = 0; c < kCountries; ++c) {
    location.push_back(
        {EntityId(c), located_in, subregion_entity(sub_of[c])});
    location.push_back({EntityId(c), located_in, region_entity(region_of[c])});
  }
  for (size_t s = 0; s < kSubregions; ++s)
    location.push_back(
        {subregion_entity(s), located_in, region_entity(region_of_sub[s])});

  // per-task removals from the training location facts
  std::unordered_set<uint64_t> removed;
  auto remove_region_edge = [&](EntityId c) {
    removed.insert(
        triple_key({c, located_in, region_entity(region_of[c])}));
  };
  auto remove_sub_edge = [&](EntityId c) {
    removed.insert(
        triple_key({c, located_in, subregion_entity(sub_of[c])}));
  };
  std::vector<std::vector<EntityId>> neighbors(kCountries);
  for (auto [a, b] : edges) {
    neighbors[a].push_back(b);
    neighbors[b].push_back(a);
  }
  for (EntityId c : test_countries) remove_region_edge(c);
  for (EntityId c : valid_countries) remove_region_edge(c);
  if (task != CountriesTask::S1) {
    for (EntityId c : test_countries) remove_sub_edge(c);
    for (EntityId c : valid_countries) remove_sub_edge(c);
  }
  if (task == CountriesTask::S3) {
    for (const auto& held_list : {test_countries, valid_countries})
      for (EntityId c : held_list)
        for (EntityId nb : neighbors[c]) remove_region_edge(nb);
  }

  std::unordered_set<uint64_t> seen;
  auto push = [&](std::vector<Triple>& dst, const Triple& t) {
    if (seen.insert(triple_key(t)).second) dst.push_back(t);
  };
  for (const Triple& t : location)
    if (!removed.count(triple_key(t))) push(g.train, t);
  for (auto [a, b] : edges) {
    push(g.train, {a, neighbor_of, b});
    push(g.train, {b, neighbor_of, a});
  }
  for (EntityId c : valid_countries)
    push(g.valid, {c, located_in, region_entity(region_of[c])});
  for (EntityId c : test_countries)
    push(g.test, {c, located_in, region_entity(region_of[c])});

  g.rebuild_filter();
  return g;
}

KnowledgeGraph make_random_graph(size_t entities, size_t relations,
                                 size_t train, size_t valid, size_t test,
                                 uint64_t seed) {
  const unsigned __int128 space =
      (unsigned __int128)(entities) * entities * relations;
  require(space >= train + valid + test, Err::ShapeMismatch,
          "requested more distinct triples than the graph can hold");
  KnowledgeGraph g;
  g.entity_names.reserve(entities);
  for (size_t i = 0; i < entities; ++i)
    g.entity_names.push_back(numbered("e", i, 6));
  for (size_t i = 0; i < relations; ++i)
    g.relation_names.push_back(numbered("r", i, 4));

  Rng rng(seed ^ 0x72616e646f6dULL);
  std::unordered_set<uint64_t> seen;
  seen.reserve((train + valid + test) * 2);
  auto fill = [&](std::vector<Triple>& dst, size_t count) {
    dst.reserve(count);
    while (dst.size() < count) {
      Triple t{EntityId(rng.below(entities)), RelationId(rng.below(relations)),
               EntityId(rng.below(entities))};
      if (seen.insert(triple_key(t)).second) dst.push_back(t);
    }
  };
  fill(g.train, train);
  fill(g.valid, valid);
  fill(g.test, test);
  g.rebuild_filter();
  return g;
}

}  // namespace kge
