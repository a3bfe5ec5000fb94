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

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "kge/checkpoint.hpp"
#include "kge/evaluation.hpp"
#include "kge/patterns.hpp"
#include "kge/train.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

fs::path resolve_dataset(const std::string& dir) {
  fs::path p(dir);
  const char* root = std::getenv("KGE_DATA_ROOT");
  if (root && *root && p.is_relative()) return fs::path(root) / p;
  return p;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  kge::require(out.good(), kge::Err::IoError, "cannot write " + path.string());
  out << text;
  out.flush();
  kge::require(out.good(), kge::Err::IoError, "write failed " + path.string());
}

json metric_to_json(const kge::MetricReport& m) {
  return json{{"mr", m.mr},     {"mrr", m.mrr},   {"h1", m.hits1},
              {"h3", m.hits3},  {"h10", m.hits10}, {"count", m.count}};
}

json report_to_json(const kge::EvalReport& r) {
  json by_cat;
  const char* sides[2] = {"head", "tail"};
  for (int s = 0; s < 2; ++s) {
    json side_obj;
    for (int c = 0; c < 4; ++c) {
      const auto& m = r.by_category[s][c];
      if (m.count > 0)
        side_obj[kge::category_name(kge::Category(c))] = metric_to_json(m);
    }
    by_cat[sides[s]] = side_obj;
  }
  return json{{"overall", metric_to_json(r.overall)},
              {"head", metric_to_json(r.by_side[0])},
              {"tail", metric_to_json(r.by_side[1])},
              {"by_category", by_cat}};
}

std::string report_table(const kge::EvalReport& r) {
  char buf[256];
  std::string out = "                 MR      MRR      H@1      H@3     H@10\n";
  auto row = [&](const char* label, const kge::MetricReport& m) {
    std::snprintf(buf, sizeof(buf), "%-10s %8.1f %8.3f %8.3f %8.3f %8.3f\n",
                  label, m.mr, m.mrr, m.hits1, m.hits3, m.hits10);
    out += buf;
  };
  row("overall", r.overall);
  row("head", r.by_side[0]);
  row("tail", r.by_side[1]);
  return out;
}

// Shared provenance record: every artifact-producing command drops the
// fully-resolved configuration and seed next to its outputs.
void write_provenance(const fs::path& out_dir, const kge::TrainConfig& cfg,
                      const json& extra) {
  json obj = json::parse(kge::config_to_json(cfg));
  for (auto it = extra.begin(); it != extra.end(); ++it) obj[it.key()] = *it;
  write_text(out_dir / "resolved_config.json", obj.dump(2) + "\n");
}

struct CommonArgs {
  std::string dataset;
  std::string out = "kge_out";
  std::string checkpoint;
  std::string config_file;
  std::vector<std::pair<std::string, std::string>> overrides;
};

// Registers the config-surface flags; each one recorded only when set so
// file values survive unless explicitly overridden.
void add_config_flags(CLI::App* cmd, CommonArgs& args) {
  auto bind = [&args, cmd](const std::string& flag, const std::string& key,
                           const std::string& help) {
    cmd->add_option_function<std::string>(
           flag,
           [&args, key](const std::string& v) {
             args.overrides.emplace_back(key, v);
           },
           help)
        ->take_last();
  };
  bind("--model", "model", "rotate|protate|transe|distmult|complex");
  bind("-k,--dim", "k", "embedding dimension");
  bind("-b,--batch", "b", "batch size");
  bind("-n,--negatives", "n", "negatives per positive");
  bind("--alpha", "alpha", "self-adversarial temperature");
  bind("--gamma", "gamma", "fixed margin");
  bind("--loss", "loss", "ns|adv|margin");
  bind("--lr", "lr", "learning rate");
  bind("--steps", "max_steps", "training steps");
  bind("--valid-every", "valid_every", "validation interval (0 = never)");
  bind("--seed", "seed", "rng seed");
  bind("--workers", "workers", "parallel workers (1 = reference mode)");
  bind("--modulus-c", "modulus_c", "pRotatE entity modulus");
  bind("--init-width", "init_width", "entity init half-width (0 = auto)");
}

kge::TrainConfig resolve_config(const CommonArgs& args) {
  std::optional<fs::path> file;
  if (!args.config_file.empty()) file = fs::path(args.config_file);
  return kge::load_config(file, args.overrides);
}

int cmd_train(const CommonArgs& args, const std::vector<uint64_t>& seeds) {
  kge::TrainConfig base = resolve_config(args);
  const fs::path data_dir = resolve_dataset(args.dataset);
  kge::KnowledgeGraph graph = kge::load_dataset(data_dir);

  const bool multi = seeds.size() > 1;
  std::vector<double> test_mrrs;
  for (uint64_t seed : seeds) {
    kge::TrainConfig cfg = base;
    cfg.seed = seed;
    fs::path out_dir = multi
                           ? fs::path(args.out) / ("seed_" + std::to_string(seed))
                           : fs::path(args.out);
    fs::create_directories(out_dir);
    write_provenance(out_dir, cfg, json{{"dataset", data_dir.string()}});

    std::ofstream metrics(out_dir / "metrics.jsonl",
                          std::ios::binary | std::ios::trunc);
    auto on_valid = [&metrics](const kge::ValidRecord& r) {
      json line{{"step", r.step}, {"loss", r.loss}, {"mr", r.mr},
                {"mrr", r.mrr},   {"h1", r.h1},     {"h3", r.h3},
                {"h10", r.h10}};
      metrics << line.dump() << "\n";
      metrics.flush();
    };
    kge::Checkpoint cp = kge::train(graph, cfg, on_valid);

    fs::path cp_path = args.checkpoint.empty() || multi
                           ? out_dir / "checkpoint.kgrt"
                           : fs::path(args.checkpoint);
    kge::save_checkpoint(cp, cp_path);
    std::printf("trained %s on %s for %lld steps -> %s\n",
                kge::model_name(cfg.model), data_dir.string().c_str(),
                (long long)cfg.max_steps, cp_path.string().c_str());

    if (multi && !graph.test.empty()) {
      kge::ThreadPool pool(cfg.workers);
      auto report = kge::evaluate(cp.eval_table(), graph, kge::Split::Test,
                                  &pool);
      test_mrrs.push_back(report.overall.mrr);
      std::printf("seed %llu: test MRR %.4f\n", (unsigned long long)seed,
                  report.overall.mrr);
    }
  }
  if (multi && !test_mrrs.empty()) {
    double mean = 0.0;
    for (double m : test_mrrs) mean += m;
    mean /= double(test_mrrs.size());
    double var = 0.0;
    for (double m : test_mrrs) var += (m - mean) * (m - mean);
    var /= double(test_mrrs.size());  // population variance
    json summary{{"seeds", seeds}, {"test_mrr", test_mrrs},
                 {"mean", mean},   {"variance", var}};
    write_text(fs::path(args.out) / "summary.json", summary.dump(2) + "\n");
    std::printf("test MRR over %zu seeds: %.4f +- %.6f (variance)\n",
                test_mrrs.size(), mean, var);
  }
  return 0;
}

int cmd_evaluate(const CommonArgs& args, const std::string& split_name,
                 bool show_table, int workers,
                 const std::vector<uint64_t>& seeds) {
  const fs::path data_dir = resolve_dataset(args.dataset);
  kge::KnowledgeGraph graph = kge::load_dataset(data_dir);
  kge::Split split = split_name == "train"   ? kge::Split::Train
                     : split_name == "valid" ? kge::Split::Valid
                                             : kge::Split::Test;
  fs::create_directories(args.out);

  auto eval_one = [&](const fs::path& cp_path) {
    kge::Checkpoint cp = kge::load_checkpoint(cp_path);
    kge::ThreadPool pool(workers);
    return kge::evaluate(cp.eval_table(), graph, split, &pool);
  };

  if (seeds.size() > 1) {
    // aggregate checkpoints laid out by `train --seeds`
    std::vector<double> mrrs;
    json per_seed = json::array();
    for (uint64_t seed : seeds) {
      fs::path cp_path = fs::path(args.checkpoint) /
                         ("seed_" + std::to_string(seed)) / "checkpoint.kgrt";
      auto report = eval_one(cp_path);
      mrrs.push_back(report.overall.mrr);
      per_seed.push_back(report_to_json(report));
    }
    double mean = 0.0;
    for (double m : mrrs) mean += m;
    mean /= double(mrrs.size());
    double var = 0.0;
    for (double m : mrrs) var += (m - mean) * (m - mean);
    var /= double(mrrs.size());
    json out{{"split", split_name}, {"seeds", seeds},  {"mrr", mrrs},
             {"mean", mean},        {"variance", var}, {"reports", per_seed}};
    write_text(fs::path(args.out) / "report.json", out.dump(2) + "\n");
    std::printf("%s MRR over %zu seeds: %.4f +- %.6f (variance)\n",
                split_name.c_str(), mrrs.size(), mean, var);
    return 0;
  }

  auto report = eval_one(args.checkpoint);
  json out = report_to_json(report);
  out["split"] = split_name;
  write_text(fs::path(args.out) / "report.json", out.dump(2) + "\n");
  if (show_table) std::fputs(report_table(report).c_str(), stdout);
  std::printf("%s: MR %.1f MRR %.4f H@1 %.3f H@3 %.3f H@10 %.3f (%zu ranks)\n",
              split_name.c_str(), report.overall.mr, report.overall.mrr,
              report.overall.hits1, report.overall.hits3,
              report.overall.hits10, report.overall.count);
  return 0;
}

// token: numeric relation id, or a relation name resolved via the dataset
kge::RelationId parse_relation(const std::string& token,
                               const kge::KnowledgeGraph* graph) {
  try {
    size_t pos = 0;
    unsigned long id = std::stoul(token, &pos);
    if (pos == token.size()) return kge::RelationId(id);
  } catch (const std::exception&) {
  }
  kge::require(graph != nullptr, kge::Err::ParseError,
               "relation '" + token + "' needs --dataset for name lookup");
  auto id = graph->find_relation(token);
  kge::require(id.has_value(), kge::Err::UnknownSymbol,
               "relation '" + token + "' not in vocabulary");
  return *id;
}

int cmd_analyze(const CommonArgs& args, const std::vector<std::string>& pairs,
                const std::vector<std::string>& triples, int bins) {
  kge::Checkpoint cp = kge::load_checkpoint(args.checkpoint);
  std::optional<kge::KnowledgeGraph> graph;
  if (!args.dataset.empty())
    graph = kge::load_dataset(resolve_dataset(args.dataset));
  const kge::KnowledgeGraph* gp = graph ? &*graph : nullptr;
  const kge::EmbeddingTable& table = cp.eval_table();
  fs::create_directories(args.out);
  write_provenance(args.out, cp.config,
                   json{{"command", "analyze"}, {"bins", bins}});

  auto rel_name = [&](kge::RelationId r) {
    return gp && r < gp->relation_names.size() ? gp->relation_names[r]
                                               : std::to_string(r);
  };

  json report;
  json rel_list = json::array();
  std::vector<kge::PhaseProfile> profiles;
  for (kge::RelationId r = 0; r < table.num_relations; ++r) {
    auto profile = kge::relation_phases(table, r, bins);
    kge::export_histogram(
        profile, bins,
        fs::path(args.out) / ("hist_" + std::to_string(r) + ".csv"));
    rel_list.push_back(json{{"id", r},
                            {"name", rel_name(r)},
                            {"symmetry_residual", kge::symmetry_residual(profile)}});
    profiles.push_back(std::move(profile));
  }
  report["relations"] = rel_list;

  auto split_tokens = [](const std::string& s) {
    std::vector<std::string> parts;
    size_t start = 0;
    while (true) {
      size_t colon = s.find(':', start);
      if (colon == std::string::npos) {
        parts.push_back(s.substr(start));
        return parts;
      }
      parts.push_back(s.substr(start, colon - start));
      start = colon + 1;
    }
  };
  json pair_list = json::array();
  for (const std::string& spec : pairs) {
    auto parts = split_tokens(spec);
    kge::require(parts.size() == 2, kge::Err::ParseError,
                 "--pair expects r1:r2, got '" + spec + "'");
    auto a = parse_relation(parts[0], gp), b = parse_relation(parts[1], gp);
    pair_list.push_back(
        json{{"r1", a},
             {"r2", b},
             {"inversion_residual",
              kge::inversion_residual(profiles.at(a), profiles.at(b))}});
  }
  report["pairs"] = pair_list;
  json triple_list = json::array();
  for (const std::string& spec : triples) {
    auto parts = split_tokens(spec);
    kge::require(parts.size() == 3, kge::Err::ParseError,
                 "--triple expects r1:r2:r3, got '" + spec + "'");
    auto a = parse_relation(parts[0], gp), b = parse_relation(parts[1], gp),
         c = parse_relation(parts[2], gp);
    triple_list.push_back(
        json{{"r1", a},
             {"r2", b},
             {"r3", c},
             {"composition_residual",
              kge::composition_residual(profiles.at(a), profiles.at(b),
                                        profiles.at(c))}});
  }
  report["triples"] = triple_list;
  write_text(fs::path(args.out) / "patterns.json", report.dump(2) + "\n");
  std::printf("wrote %s and %zu histograms\n",
              (fs::path(args.out) / "patterns.json").string().c_str(),
              size_t(table.num_relations));
  return 0;
}

int cmd_categorize(const CommonArgs& args, const std::string& split_name) {
  const fs::path data_dir = resolve_dataset(args.dataset);
  kge::KnowledgeGraph graph = kge::load_dataset(data_dir);
  kge::Split split = split_name == "valid"  ? kge::Split::Valid
                     : split_name == "test" ? kge::Split::Test
                                            : kge::Split::Train;
  auto cats = kge::relation_categories(graph, split);
  size_t counts[4] = {0, 0, 0, 0};
  json rel_list = json::array();
  for (const auto& [r, rc] : cats) {
    counts[int(rc.category)]++;
    rel_list.push_back(json{{"id", r},
                            {"name", graph.relation_names[r]},
                            {"tph", rc.tph},
                            {"hpt", rc.hpt},
                            {"category", kge::category_name(rc.category)}});
  }
  fs::create_directories(args.out);
  json out{{"split", split_name},
           {"counts",
            {{"1-to-1", counts[0]},
             {"1-to-N", counts[1]},
             {"N-to-1", counts[2]},
             {"N-to-N", counts[3]}}},
           {"relations", rel_list}};
  write_text(fs::path(args.out) / "categories.json", out.dump(2) + "\n");
  std::printf("1-to-1 %zu | 1-to-N %zu | N-to-1 %zu | N-to-N %zu (of %zu)\n",
              counts[0], counts[1], counts[2], counts[3], cats.size());
  return 0;
}

int cmd_countries(const CommonArgs& args) {
  const fs::path data_dir = resolve_dataset(args.dataset);
  kge::KnowledgeGraph graph = kge::load_dataset(data_dir);
  kge::Checkpoint cp = kge::load_checkpoint(args.checkpoint);

  // optional region dictionary beside the split files, one name per line
  std::vector<kge::EntityId> regions;
  fs::path region_file = data_dir / "regions.dict";
  if (fs::exists(region_file)) {
    std::ifstream in(region_file);
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      size_t tab = line.find('\t');  // accept "id<TAB>name" or bare names
      std::string name = tab == std::string::npos ? line : line.substr(tab + 1);
      auto id = graph.find_entity(name);
      kge::require(id.has_value(), kge::Err::UnknownSymbol,
                   "region '" + name + "' not in vocabulary");
      regions.push_back(*id);
    }
  } else {
    regions = kge::find_countries_regions(graph);
  }

  std::vector<kge::PrPoint> curve;
  double auc = kge::countries_auc_pr(cp.eval_table(), graph, regions, &curve);
  fs::create_directories(args.out);
  std::string csv = "threshold,precision,recall\n";
  char buf[128];
  for (const auto& p : curve) {
    std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%.12g\n", p.threshold,
                  p.precision, p.recall);
    csv += buf;
  }
  write_text(fs::path(args.out) / "pr_curve.csv", csv);
  json out{{"auc_pr", auc}, {"points", curve.size()}};
  write_text(fs::path(args.out) / "report.json", out.dump(2) + "\n");
  std::printf("AUC-PR %.4f (%zu PR points)\n", auc, curve.size());
  return 0;
}

std::vector<uint64_t> parse_seeds(const std::string& csv, uint64_t fallback) {
  if (csv.empty()) return {fallback};
  std::vector<uint64_t> seeds;
  size_t start = 0;
  while (start <= csv.size()) {
    size_t comma = csv.find(',', start);
    std::string tok = comma == std::string::npos
                          ? csv.substr(start)
                          : csv.substr(start, comma - start);
    if (!tok.empty()) seeds.push_back(std::stoull(tok));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  kge::require(!seeds.empty(), kge::Err::ParseError, "empty --seeds list");
  return seeds;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"knowledge graph embedding trainer and evaluator"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string seeds_csv, split = "test";
  bool show_table = false;
  int workers = 1, bins = kge::kDefaultHistogramBins;
  std::vector<std::string> pairs, triples;

  auto* train = app.add_subcommand("train", "train a model");
  train->add_option("--dataset", args.dataset, "dataset directory")->required();
  train->add_option("--config", args.config_file, "JSON config file");
  train->add_option("--out", args.out, "output directory");
  train->add_option("--checkpoint", args.checkpoint, "checkpoint output path");
  train->add_option("--seeds", seeds_csv, "comma-separated seed list");
  add_config_flags(train, args);

  auto* evaluate = app.add_subcommand("evaluate", "filtered link prediction");
  evaluate->add_option("--dataset", args.dataset)->required();
  evaluate->add_option("--checkpoint", args.checkpoint)->required();
  evaluate->add_option("--out", args.out);
  evaluate->add_option("--split", split)->check(CLI::IsMember({"train", "valid", "test"}));
  evaluate->add_option("--workers", workers);
  evaluate->add_option("--seeds", seeds_csv, "aggregate seed_<s> checkpoints");
  evaluate->add_flag("--table", show_table, "print an aligned metric table");

  auto* analyze = app.add_subcommand("analyze", "relation phase analysis");
  analyze->add_option("--checkpoint", args.checkpoint)->required();
  analyze->add_option("--dataset", args.dataset, "for relation names");
  analyze->add_option("--out", args.out);
  analyze->add_option("--bins", bins);
  analyze->add_option("--pair", pairs, "inverse pair r1:r2 (repeatable)");
  analyze->add_option("--triple", triples, "composition r1:r2:r3 (repeatable)");

  std::string cat_split = "train";
  auto* categorize = app.add_subcommand("categorize", "relation categories");
  categorize->add_option("--dataset", args.dataset)->required();
  categorize->add_option("--out", args.out);
  categorize->add_option("--split", cat_split)
      ->check(CLI::IsMember({"train", "valid", "test"}));

  auto* countries = app.add_subcommand("countries", "AUC-PR region queries");
  countries->add_option("--dataset", args.dataset)->required();
  countries->add_option("--checkpoint", args.checkpoint)->required();
  countries->add_option("--out", args.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // usage errors
  }

  try {
    if (train->parsed()) {
      kge::TrainConfig probe = resolve_config(args);  // seed for --seeds default
      return cmd_train(args, parse_seeds(seeds_csv, probe.seed));
    }
    if (evaluate->parsed())
      return cmd_evaluate(args, split, show_table, workers,
                          parse_seeds(seeds_csv, 0));
    if (analyze->parsed()) return cmd_analyze(args, pairs, triples, bins);
    if (categorize->parsed()) return cmd_categorize(args, cat_split);
    if (countries->parsed()) return cmd_countries(args);
  } catch (const kge::Error& e) {
    nlohmann::json err{{"error", kge::err_name(e.code())},
                       {"message", e.what()}};
    std::fprintf(stderr, "%s\n", err.dump().c_str());
    return 1;
  } catch (const std::exception& e) {
    nlohmann::json err{{"error", "Internal"}, {"message", e.what()}};
    std::fprintf(stderr, "%s\n", err.dump().c_str());
    return 1;
  }
  return 0;
}
