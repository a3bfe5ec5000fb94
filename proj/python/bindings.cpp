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
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "kge/checkpoint.hpp"
#include "kge/evaluation.hpp"
#include "kge/patterns.hpp"
#include "kge/sampling.hpp"
#include "kge/synthetic.hpp"
#include "kge/train.hpp"

namespace py = pybind11;
using namespace kge;

namespace {

py::dict metric_dict(const MetricReport& m) {
  py::dict d;
  d["mr"] = m.mr;
  d["mrr"] = m.mrr;
  d["h1"] = m.hits1;
  d["h3"] = m.hits3;
  d["h10"] = m.hits10;
  d["count"] = m.count;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "knowledge graph embeddings: rotation-family models, "
            "self-adversarial training, filtered ranking";

  py::register_exception<Error>(m, "KgeError");

  py::enum_<ModelKind>(m, "ModelKind")
      .value("RotatE", ModelKind::RotatE)
      .value("PRotatE", ModelKind::PRotatE)
      .value("TransE", ModelKind::TransE)
      .value("DistMult", ModelKind::DistMult)
      .value("ComplEx", ModelKind::ComplEx);

  py::enum_<LossKind>(m, "LossKind")
      .value("NegativeSampling", LossKind::NegativeSampling)
      .value("SelfAdversarial", LossKind::SelfAdversarial)
      .value("MarginRanking", LossKind::MarginRanking);

  py::enum_<Side>(m, "Side").value("Head", Side::Head).value("Tail", Side::Tail);

  py::enum_<Split>(m, "Split")
      .value("Train", Split::Train)
      .value("Valid", Split::Valid)
      .value("Test", Split::Test);

  py::enum_<CountriesTask>(m, "CountriesTask")
      .value("S1", CountriesTask::S1)
      .value("S2", CountriesTask::S2)
      .value("S3", CountriesTask::S3);

  py::class_<Triple>(m, "Triple")
      .def(py::init<EntityId, RelationId, EntityId>(), py::arg("head"),
           py::arg("relation"), py::arg("tail"))
      .def_readwrite("head", &Triple::head)
      .def_readwrite("relation", &Triple::relation)
      .def_readwrite("tail", &Triple::tail)
      .def("__eq__", [](const Triple& a, const Triple& b) { return a == b; })
      .def("__repr__", [](const Triple& t) {
        return "Triple(" + std::to_string(t.head) + ", " +
               std::to_string(t.relation) + ", " + std::to_string(t.tail) + ")";
      });

  py::class_<KnowledgeGraph>(m, "KnowledgeGraph")
      .def_property_readonly("num_entities", &KnowledgeGraph::num_entities)
      .def_property_readonly("num_relations", &KnowledgeGraph::num_relations)
      .def_readonly("entity_names", &KnowledgeGraph::entity_names)
      .def_readonly("relation_names", &KnowledgeGraph::relation_names)
      .def_readonly("train", &KnowledgeGraph::train)
      .def_readonly("valid", &KnowledgeGraph::valid)
      .def_readonly("test", &KnowledgeGraph::test)
      .def("filter_contains",
           [](const KnowledgeGraph& g, const Triple& t) {
             return g.filter.contains(t);
           })
      .def("find_relation", &KnowledgeGraph::find_relation)
      .def("find_entity", &KnowledgeGraph::find_entity);

  m.def("load_dataset", &load_dataset, py::arg("dir"));
  m.def("save_dataset", &save_dataset, py::arg("graph"), py::arg("dir"));

  py::class_<RelationCategory>(m, "RelationCategory")
      .def_readonly("tph", &RelationCategory::tph)
      .def_readonly("hpt", &RelationCategory::hpt)
      .def_property_readonly("category", [](const RelationCategory& rc) {
        return std::string(category_name(rc.category));
      });
  m.def("relation_categories", &relation_categories, py::arg("graph"),
        py::arg("split") = Split::Train);

  py::class_<TrainConfig>(m, "TrainConfig")
      .def(py::init<>())
      .def_readwrite("model", &TrainConfig::model)
      .def_readwrite("k", &TrainConfig::k)
      .def_readwrite("batch_size", &TrainConfig::batch_size)
      .def_readwrite("negatives", &TrainConfig::negatives)
      .def_readwrite("alpha", &TrainConfig::alpha)
      .def_readwrite("gamma", &TrainConfig::gamma)
      .def_readwrite("loss", &TrainConfig::loss)
      .def_readwrite("lr", &TrainConfig::lr)
      .def_readwrite("max_steps", &TrainConfig::max_steps)
      .def_readwrite("valid_every", &TrainConfig::valid_every)
      .def_readwrite("seed", &TrainConfig::seed)
      .def_readwrite("modulus_c", &TrainConfig::modulus_c)
      .def_readwrite("workers", &TrainConfig::workers)
      .def_readwrite("init_width", &TrainConfig::init_width)
      .def_readwrite("lr_decay_step", &TrainConfig::lr_decay_step)
      .def_readwrite("filter_negatives", &TrainConfig::filter_negatives)
      .def("to_json", [](const TrainConfig& c) { return config_to_json(c); });
  m.def("config_from_json", &config_from_json, py::arg("text"));

  py::class_<EmbeddingTable>(m, "EmbeddingTable")
      .def_readonly("model", &EmbeddingTable::model)
      .def_readonly("k", &EmbeddingTable::k)
      .def_readonly("num_entities", &EmbeddingTable::num_entities)
      .def_readonly("num_relations", &EmbeddingTable::num_relations)
      .def("entity_row",
           [](const EmbeddingTable& t, size_t id) {
             auto row = t.entity_row(id);
             return std::vector<double>(row.begin(), row.end());
           })
      .def("relation_row", [](const EmbeddingTable& t, size_t id) {
        auto row = t.relation_row(id);
        return std::vector<double>(row.begin(), row.end());
      });

  py::class_<ValidRecord>(m, "ValidRecord")
      .def_readonly("step", &ValidRecord::step)
      .def_readonly("loss", &ValidRecord::loss)
      .def_readonly("mr", &ValidRecord::mr)
      .def_readonly("mrr", &ValidRecord::mrr)
      .def_readonly("h1", &ValidRecord::h1)
      .def_readonly("h3", &ValidRecord::h3)
      .def_readonly("h10", &ValidRecord::h10);

  py::class_<Checkpoint>(m, "Checkpoint")
      .def_readonly("config", &Checkpoint::config)
      .def_readonly("table", &Checkpoint::table)
      .def_readonly("step", &Checkpoint::step)
      .def_readonly("history", &Checkpoint::history)
      .def_readonly("best_mrr", &Checkpoint::best_mrr)
      .def_readonly("best_step", &Checkpoint::best_step)
      .def_readonly("loss_curve", &Checkpoint::loss_curve)
      .def_property_readonly(
          "eval_table",
          [](const Checkpoint& cp) { return cp.eval_table(); },
          "best-validation parameters when available, else the final ones");

  m.def("train", &train, py::arg("graph"), py::arg("config"),
        py::arg("on_valid") = std::function<void(const ValidRecord&)>(),
        py::call_guard<py::gil_scoped_release>());
  m.def(
      "init_embeddings",
      [](const TrainConfig& cfg, uint64_t seed, size_t entities,
         size_t relations) {
        Rng rng(seed);
        return init_embeddings(cfg, rng, entities, relations);
      },
      py::arg("config"), py::arg("seed"), py::arg("num_entities"),
      py::arg("num_relations"));

  m.def("save_checkpoint", &save_checkpoint, py::arg("checkpoint"),
        py::arg("path"));
  m.def("load_checkpoint", &load_checkpoint, py::arg("path"));

  // scoring and algebra
  m.def("score", &score, py::arg("table"), py::arg("triple"));
  m.def(
      "rotate_distance",
      [](const std::vector<double>& h_re, const std::vector<double>& h_im,
         const std::vector<double>& theta, const std::vector<double>& t_re,
         const std::vector<double>& t_im) {
        return rotate_distance(ComplexVector{h_re, h_im}, PhaseVector{theta},
                               ComplexVector{t_re, t_im});
      },
      py::arg("h_re"), py::arg("h_im"), py::arg("theta"), py::arg("t_re"),
      py::arg("t_im"));
  m.def("protate_distance",
        [](const std::vector<double>& th, const std::vector<double>& tr,
           const std::vector<double>& tt, double c) {
          return protate_distance(th, tr, tt, c);
        });
  m.def("transe_distance",
        [](const std::vector<double>& h, const std::vector<double>& r,
           const std::vector<double>& t) { return transe_distance(h, r, t); });
  m.def("distmult_score",
        [](const std::vector<double>& h, const std::vector<double>& r,
           const std::vector<double>& t) { return distmult_score(h, r, t); });
  m.def("complex_score",
        [](const std::vector<double>& h_re, const std::vector<double>& h_im,
           const std::vector<double>& r_re, const std::vector<double>& r_im,
           const std::vector<double>& t_re, const std::vector<double>& t_im) {
          return complex_score(ComplexVector{h_re, h_im},
                               ComplexVector{r_re, r_im},
                               ComplexVector{t_re, t_im});
        });

  // losses and sampling
  m.def("ns_loss",
        [](double pos_d, const std::vector<double>& neg_d, double gamma) {
          return ns_loss(pos_d, neg_d, gamma);
        });
  m.def("self_adversarial_loss",
        [](double pos_d, const std::vector<double>& neg_d,
           const std::vector<double>& w, double gamma) {
          return self_adversarial_loss(pos_d, neg_d, w, gamma);
        });
  m.def("margin_ranking_loss",
        [](double pos_d, const std::vector<double>& neg_d,
           const std::vector<double>& w, double gamma) {
          return margin_ranking_loss(pos_d, neg_d, w, gamma);
        });
  m.def("self_adversarial_weights",
        [](const std::vector<double>& scores, double alpha) {
          return self_adversarial_weights(scores, alpha);
        });

  // evaluation
  py::class_<RankResult>(m, "RankResult")
      .def_readonly("triple", &RankResult::triple)
      .def_readonly("side", &RankResult::side)
      .def_readonly("rank", &RankResult::rank)
      .def_readonly("num_candidates", &RankResult::num_candidates);
  m.def("rank_triple", &rank_triple, py::arg("table"), py::arg("triple"),
        py::arg("side"), py::arg("graph"));
  m.def(
      "evaluate",
      [](const EmbeddingTable& table, const KnowledgeGraph& g, Split split,
         int workers) {
        ThreadPool pool(workers);
        auto r = evaluate(table, g, split, &pool);
        py::dict d;
        d["overall"] = metric_dict(r.overall);
        d["head"] = metric_dict(r.by_side[0]);
        d["tail"] = metric_dict(r.by_side[1]);
        return d;
      },
      py::arg("table"), py::arg("graph"), py::arg("split") = Split::Test,
      py::arg("workers") = 1);
  m.def(
      "countries_auc_pr",
      [](const EmbeddingTable& table, const KnowledgeGraph& g) {
        return countries_auc_pr(table, g);
      },
      py::arg("table"), py::arg("graph"));

  // phase analysis
  py::class_<PhaseProfile>(m, "PhaseProfile")
      .def_readonly("relation", &PhaseProfile::relation)
      .def_readonly("theta", &PhaseProfile::theta)
      .def_readonly("histogram", &PhaseProfile::histogram);
  m.def("relation_phases", &relation_phases, py::arg("table"),
        py::arg("relation"), py::arg("bins") = kDefaultHistogramBins);
  m.def("symmetry_residual", &symmetry_residual);
  m.def("inversion_residual", &inversion_residual);
  m.def("composition_residual", &composition_residual);

  // synthetic data
  py::class_<PatternGraphInfo>(m, "PatternGraphInfo")
      .def_readonly("sym", &PatternGraphInfo::sym)
      .def_readonly("inv_a", &PatternGraphInfo::inv_a)
      .def_readonly("inv_b", &PatternGraphInfo::inv_b)
      .def_readonly("comp", &PatternGraphInfo::comp)
      .def_readonly("comp_left", &PatternGraphInfo::comp_left)
      .def_readonly("comp_right", &PatternGraphInfo::comp_right)
      .def_readonly("distractor1", &PatternGraphInfo::distractor1)
      .def_readonly("distractor2", &PatternGraphInfo::distractor2);
  m.def(
      "make_pattern_graph",
      [](size_t entities, uint64_t seed) {
        PatternGraphConfig cfg;
        cfg.entities = entities;
        cfg.seed = seed;
        PatternGraphInfo info;
        auto g = make_pattern_graph(cfg, &info);
        return py::make_tuple(g, info);
      },
      py::arg("entities") = 500, py::arg("seed") = 0);
  m.def("make_countries", &make_countries, py::arg("task"), py::arg("seed"));
  m.def("make_random_graph", &make_random_graph, py::arg("entities"),
        py::arg("relations"), py::arg("train"), py::arg("valid"),
        py::arg("test"), py::arg("seed"));
}
