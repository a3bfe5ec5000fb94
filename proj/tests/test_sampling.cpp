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
#include "kge/synthetic.hpp"
#include "support/helpers.hpp"

using namespace kge;
using namespace kge::test;

TEST_CASE("corrupt keeps the relation and the uncorrupted slot") {
  auto g = make_random_graph(1000, 5, 4000, 100, 100, 3);
  Rng rng(1);
  const Triple pos = g.train[7];
  auto head_side = corrupt(pos, Side::Head, 4, g, rng, true);
  REQUIRE(head_side.negatives.size() == 4);
  for (const Triple& n : head_side.negatives) {
    CHECK(n.relation == pos.relation);
    CHECK(n.tail == pos.tail);
  }
  auto tail_side = corrupt(pos, Side::Tail, 4, g, rng, true);
  for (const Triple& n : tail_side.negatives) {
    CHECK(n.relation == pos.relation);
    CHECK(n.head == pos.head);
  }
}

TEST_CASE("corrupt with filtering avoids observed triples") {
  auto g = make_random_graph(50, 2, 600, 30, 30, 9);
  Rng rng(2);
  for (int it = 0; it < 50; ++it) {
    const Triple pos = g.train[size_t(rng.below(g.train.size()))];
    auto res = corrupt(pos, Side::Tail, 8, g, rng, true);
    if (res.exhausted_retries) continue;
    for (const Triple& n : res.negatives)
      CHECK_FALSE(g.filter.contains(n));
  }
}

TEST_CASE("corrupt flags exhaustion when no false candidate exists") {
  // relation links every ordered pair, so every corruption is a true triple
  KnowledgeGraph g;
  g.entity_names = {"a", "b", "c"};
  g.relation_names = {"r"};
  for (EntityId h = 0; h < 3; ++h)
    for (EntityId t = 0; t < 3; ++t) g.train.push_back({h, 0, t});
  g.rebuild_filter();
  Rng rng(3);
  auto res = corrupt(g.train[0], Side::Tail, 2, g, rng, true);
  CHECK(res.exhausted_retries);
  CHECK(res.negatives.size() == 2);
}

TEST_CASE("corrupt replays identically from an equal generator state") {
  auto g = make_random_graph(200, 3, 1000, 50, 50, 4);
  Rng a(77), b(77);
  auto ra = corrupt(g.train[0], Side::Tail, 16, g, a, true);
  auto rb = corrupt(g.train[0], Side::Tail, 16, g, b, true);
  REQUIRE(ra.negatives.size() == rb.negatives.size());
  for (size_t i = 0; i < ra.negatives.size(); ++i)
    CHECK(ra.negatives[i] == rb.negatives[i]);
}

TEST_CASE("self-adversarial weights: closed forms") {
  SUBCASE("alpha zero is uniform") {
    std::vector<double> scores{3.0, -1.0, 0.5, 7.0};
    auto w = self_adversarial_weights(scores, 0.0);
    for (double x : w) CHECK(x == doctest::Approx(0.25));
  }
  SUBCASE("single negative gets everything") {
    std::vector<double> scores{-2.5};
    auto w = self_adversarial_weights(scores, 1.7);
    CHECK(w[0] == doctest::Approx(1.0));
  }
  SUBCASE("softmax of (0, ln 2) at alpha 1 is (1/3, 2/3)") {
    std::vector<double> scores{0.0, std::log(2.0)};
    auto w = self_adversarial_weights(scores, 1.0);
    CHECK(w[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(w[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  }
}

TEST_CASE("self-adversarial weights: simplex, shift invariance, monotonicity") {
  Rng rng(5);
  for (int it = 0; it < 100; ++it) {
    size_t n = 1 + rng.below(12);
    auto scores = random_vector(rng, n, -4.0, 4.0);
    double alpha = rng.uniform(0.0, 3.0);
    auto w = self_adversarial_weights(scores, alpha);
    double sum = 0.0;
    for (double x : w) {
      CHECK(x >= 0.0);
      sum += x;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));

    auto shifted = scores;
    for (double& s : shifted) s += 13.7;
    auto w2 = self_adversarial_weights(shifted, alpha);
    for (size_t i = 0; i < n; ++i)
      CHECK(w2[i] == doctest::Approx(w[i]).epsilon(1e-9));

    if (alpha > 0.0) {
      for (size_t i = 0; i + 1 < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
          if (scores[i] > scores[j]) CHECK(w[i] > w[j]);
    }
  }
}

TEST_CASE("weights converge to the argmax indicator as alpha grows") {
  std::vector<double> scores{0.3, 1.1, -0.4, 0.9};
  auto w = self_adversarial_weights(scores, 1e4);
  CHECK(w[1] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(w[0] + w[2] + w[3] == doctest::Approx(0.0).epsilon(1e-9));
}
