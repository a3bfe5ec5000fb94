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

#include <cstdlib>
#include <set>

#include "kge/dataset.hpp"
#include "kge/synthetic.hpp"
#include "support/helpers.hpp"

using namespace kge;
using namespace kge::test;

TEST_CASE("loader: hand-built fixture counts") {
  TempDir tmp("load");
  write_dataset(tmp.path(), {"a", "b"}, {"r0", "r1"},
                {"a\tr0\tb", "b\tr0\ta", "a\tr1\ta"});
  auto g = load_dataset(tmp.path());
  CHECK(g.num_entities() == 2);
  CHECK(g.num_relations() == 2);
  CHECK(g.train.size() == 3);
  CHECK(g.valid.empty());
  CHECK(g.test.empty());
  CHECK(g.filter.size() == 3);
}

TEST_CASE("loader: empty relation dictionary makes triples unresolvable") {
  TempDir tmp("nodict");
  write_dataset(tmp.path(), {"a", "b"}, {}, {"a\tr0\tb"});
  try {
    load_dataset(tmp.path());
    FAIL("expected UnknownSymbol");
  } catch (const Error& e) {
    CHECK(e.code() == Err::UnknownSymbol);
  }
}

TEST_CASE("loader: error taxonomy") {
  TempDir tmp("errs");
  SUBCASE("missing file") {
    write_dataset(tmp.path(), {"a"}, {"r"}, {});
    std::filesystem::remove(tmp.path() / "valid.txt");
    try {
      load_dataset(tmp.path());
      FAIL("expected MissingFile");
    } catch (const Error& e) {
      CHECK(e.code() == Err::MissingFile);
    }
  }
  SUBCASE("malformed triple line") {
    write_dataset(tmp.path(), {"a"}, {"r"}, {"a\tr"});
    try {
      load_dataset(tmp.path());
      FAIL("expected MalformedLine");
    } catch (const Error& e) {
      CHECK(e.code() == Err::MalformedLine);
    }
  }
  SUBCASE("unknown entity") {
    write_dataset(tmp.path(), {"a"}, {"r"}, {"a\tr\tzzz"});
    try {
      load_dataset(tmp.path());
      FAIL("expected UnknownSymbol");
    } catch (const Error& e) {
      CHECK(e.code() == Err::UnknownSymbol);
    }
  }
  SUBCASE("non-contiguous dictionary ids") {
    write_dataset(tmp.path(), {"a"}, {"r"}, {});
    write_file(tmp.path() / "entities.dict", "0\ta\n2\tb\n");
    try {
      load_dataset(tmp.path());
      FAIL("expected MalformedLine");
    } catch (const Error& e) {
      CHECK(e.code() == Err::MalformedLine);
    }
  }
}

TEST_CASE("loader: duplicate triples are dropped") {
  TempDir tmp("dups");
  write_dataset(tmp.path(), {"a", "b"}, {"r"},
                {"a\tr\tb", "a\tr\tb", "b\tr\ta"});
  auto g = load_dataset(tmp.path());
  CHECK(g.train.size() == 2);
}

TEST_CASE("filter: membership over every split") {
  TempDir tmp("filter");
  write_dataset(tmp.path(), {"a", "b", "c"}, {"r"}, {"a\tr\tb"}, {"b\tr\tc"},
                {"c\tr\ta"});
  auto g = load_dataset(tmp.path());
  for (const auto* split : {&g.train, &g.valid, &g.test})
    for (const Triple& t : *split) CHECK(filter_contains(g.filter, t));
  CHECK_FALSE(filter_contains(g.filter, Triple{0, 0, 0}));
  CHECK_FALSE(filter_contains(g.filter, Triple{1, 0, 0}));
}

TEST_CASE("filter: cardinality equals an independent set-union pass") {
  auto g = make_random_graph(40, 4, 300, 40, 40, 99);
  TempDir tmp("union");
  save_dataset(g, tmp.path());
  auto loaded = load_dataset(tmp.path());

  // independent pass over the raw files
  std::set<std::string> lines;
  for (const char* name : {"train.txt", "valid.txt", "test.txt"}) {
    std::ifstream in(tmp.path() / name);
    std::string line;
    while (std::getline(in, line))
      if (!line.empty()) lines.insert(line);
  }
  CHECK(loaded.filter.size() == lines.size());
}

TEST_CASE("dataset round trip preserves id-level triples") {
  auto g = make_random_graph(25, 3, 120, 15, 15, 5);
  TempDir tmp("round");
  save_dataset(g, tmp.path());
  auto h = load_dataset(tmp.path());
  REQUIRE(h.num_entities() == g.num_entities());
  REQUIRE(h.num_relations() == g.num_relations());
  auto key_set = [](const std::vector<Triple>& v) {
    std::set<uint64_t> s;
    for (const Triple& t : v) s.insert(triple_key(t));
    return s;
  };
  CHECK(key_set(h.train) == key_set(g.train));
  CHECK(key_set(h.valid) == key_set(g.valid));
  CHECK(key_set(h.test) == key_set(g.test));
}

TEST_CASE("categories: pure function of tph/hpt") {
  CHECK(classify_relation(1.0, 1.0).category == Category::OneToOne);
  CHECK(classify_relation(2.0, 2.0).category == Category::NToN);
  CHECK(classify_relation(1.0, 2.0).category == Category::OneToN);
  CHECK(classify_relation(2.0, 1.0).category == Category::NToOne);
  CHECK(classify_relation(1.5, 1.5).category == Category::NToN);  // boundary
}

TEST_CASE("categories: one-to-one and N-to-N fixtures") {
  TempDir tmp("cats");
  write_dataset(tmp.path(), {"a", "b", "x", "y"}, {"one", "many"},
                {"a\tone\tx", "b\tone\ty",
                 // {(a,r,x),(a,r,y),(b,r,x),(b,r,y)}: tph = hpt = 2
                 "a\tmany\tx", "a\tmany\ty", "b\tmany\tx", "b\tmany\ty"});
  auto g = load_dataset(tmp.path());
  auto cats = relation_categories(g, Split::Train);
  REQUIRE(cats.size() == 2);
  CHECK(cats.at(0).category == Category::OneToOne);
  CHECK(cats.at(1).category == Category::NToN);
  CHECK(cats.at(1).tph == doctest::Approx(2.0));
  CHECK(cats.at(1).hpt == doctest::Approx(2.0));
}

TEST_CASE("categories: empty split and full partition") {
  auto g = make_random_graph(30, 5, 400, 10, 10, 17);
  CHECK_THROWS_AS(
      relation_categories(KnowledgeGraph{}, Split::Train), Error);
  auto cats = relation_categories(g, Split::Train);
  std::set<RelationId> seen;
  for (const Triple& t : g.train) seen.insert(t.relation);
  CHECK(cats.size() == seen.size());  // every appearing relation classified
  size_t counts = 0;
  for (const auto& [r, rc] : cats) {
    (void)rc;
    counts++;
  }
  CHECK(counts == seen.size());
}

// Full-scale dictionaries are not shipped; when a real benchmark copy is
// available under KGE_DATA_ROOT these checks pin the published statistics.
TEST_CASE("loader: FB15k published counts when the dataset is present") {
  const char* root = std::getenv("KGE_DATA_ROOT");
  if (!root || !std::filesystem::exists(std::filesystem::path(root) / "FB15k"))
    return;  // dataset not available in this environment
  auto g = load_dataset(std::filesystem::path(root) / "FB15k");
  CHECK(g.num_entities() == 14951);
  CHECK(g.num_relations() == 1345);
  CHECK(g.train.size() == 483142);
  CHECK(g.valid.size() == 50000);
  CHECK(g.test.size() == 59071);
  auto cats = relation_categories(g, Split::Train);
  size_t counts[4] = {0, 0, 0, 0};
  for (const auto& [r, rc] : cats) counts[int(rc.category)]++;
  CHECK(counts[0] == 326);
  CHECK(counts[1] == 308);
  CHECK(counts[2] == 388);
  CHECK(counts[3] == 323);
}
