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
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "kge/common.hpp"

namespace kge {

using EntityId = uint32_t;
using RelationId = uint32_t;

struct Triple {
  EntityId head;
  RelationId relation;
  EntityId tail;
  friend bool operator==(const Triple&, const Triple&) = default;
};

// Packed key: 24 bits head | 16 bits relation | 24 bits tail.
// Vocabulary limits (checked at load): |E| < 2^24, |R| < 2^16.
inline uint64_t triple_key(const Triple& t) {
  return (uint64_t(t.head) << 40) | (uint64_t(t.relation) << 24) |
         uint64_t(t.tail);
}

enum class Split { Train, Valid, Test };

// Which slot of a triple is corrupted or ranked.
enum class Side { Head, Tail };

// Membership set over train ∪ valid ∪ test, used for the filtered
// evaluation setting and for rejecting true triples during corruption.
class FilterIndex {
 public:
  void insert(const Triple& t) { keys_.insert(triple_key(t)); }
  bool contains(const Triple& t) const { return keys_.count(triple_key(t)) > 0; }
  size_t size() const { return keys_.size(); }

 private:
  std::unordered_set<uint64_t> keys_;
};

struct KnowledgeGraph {
  std::vector<std::string> entity_names;
  std::vector<std::string> relation_names;
  std::vector<Triple> train;
  std::vector<Triple> valid;
  std::vector<Triple> test;
  FilterIndex filter;

  size_t num_entities() const { return entity_names.size(); }
  size_t num_relations() const { return relation_names.size(); }

  const std::vector<Triple>& split(Split s) const {
    switch (s) {
      case Split::Train: return train;
      case Split::Valid: return valid;
      default: return test;
    }
  }

  std::optional<RelationId> find_relation(std::string_view name) const;
  std::optional<EntityId> find_entity(std::string_view name) const;

  // Rebuilds the filter from the three splits (loaders call this).
  void rebuild_filter();
};

// Directory format: entities.dict / relations.dict ("id<TAB>name", ids
// 0..N-1) and train.txt / valid.txt / test.txt ("head<TAB>rel<TAB>tail",
// names resolved through the dictionaries). Duplicate triples within a
// split are dropped with a warning on stderr.
KnowledgeGraph load_dataset(const std::filesystem::path& dir);
void save_dataset(const KnowledgeGraph& g, const std::filesystem::path& dir);

inline bool filter_contains(const FilterIndex& index, const Triple& t) {
  return index.contains(t);
}

enum class Category { OneToOne, OneToN, NToOne, NToN };
const char* category_name(Category c);

struct RelationCategory {
  Category category;
  double tph;  // mean distinct tails per head
  double hpt;  // mean distinct heads per tail
};

// Classifies every relation appearing in the split by its tph/hpt with a
// 1.5 threshold on each axis. The quadrant naming follows the convention
// where tph < 1.5 and hpt >= 1.5 is "one-to-N".
std::map<RelationId, RelationCategory> relation_categories(
    const KnowledgeGraph& g, Split split = Split::Train);

RelationCategory classify_relation(double tph, double hpt);

}  // namespace kge
