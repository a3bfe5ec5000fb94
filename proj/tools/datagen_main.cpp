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

// Writes synthetic datasets in the standard directory format. The countries
// variants mirror the composition benchmark layout; `patterns` plants known
// symmetric/inverse/composed relations; `random` emits arbitrary splits for
// load testing.

#include <cstdio>

#include <CLI11.hpp>

#include "kge/synthetic.hpp"

int main(int argc, char** argv) {
  CLI::App app{"synthetic dataset generator"};
  app.require_subcommand(1);

  std::string out;
  uint64_t seed = 0;
  app.add_option("--out", out, "output directory")->required();
  app.add_option("--seed", seed, "generator seed");

  auto* countries = app.add_subcommand("countries", "composition benchmark");
  std::string task = "S1";
  countries->add_option("--task", task, "S1, S2 or S3")
      ->check(CLI::IsMember({"S1", "S2", "S3"}));

  auto* patterns = app.add_subcommand("patterns", "planted relation patterns");
  kge::PatternGraphConfig pat;
  patterns->add_option("--entities", pat.entities);
  patterns->add_option("--sym-pairs", pat.sym_pairs);
  patterns->add_option("--inv-pairs", pat.inv_pairs);
  patterns->add_option("--chains", pat.chains);
  patterns->add_option("--distractor-triples", pat.distractor_triples);

  auto* random = app.add_subcommand("random", "uniform random triples");
  size_t entities = 1000, relations = 10;
  size_t train = 10000, valid = 500, test = 500;
  random->add_option("--entities", entities);
  random->add_option("--relations", relations);
  random->add_option("--train", train);
  random->add_option("--valid", valid);
  random->add_option("--test", test);

  CLI11_PARSE(app, argc, argv);

  try {
    kge::KnowledgeGraph g;
    if (countries->parsed()) {
      auto t = task == "S1"   ? kge::CountriesTask::S1
               : task == "S2" ? kge::CountriesTask::S2
                              : kge::CountriesTask::S3;
      g = kge::make_countries(t, seed);
    } else if (patterns->parsed()) {
      pat.seed = seed;
      g = kge::make_pattern_graph(pat);
    } else {
      g = kge::make_random_graph(entities, relations, train, valid, test, seed);
    }
    kge::save_dataset(g, out);
    std::printf("%s: %zu entities, %zu relations, %zu/%zu/%zu triples\n",
                out.c_str(), g.num_entities(), g.num_relations(),
                g.train.size(), g.valid.size(), g.test.size());
  } catch (const kge::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
