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
#include <string_view>
#include <utility>
#include <vector>

#include "kge/common.hpp"
#include "kge/dataset.hpp"

namespace kge {

inline constexpr double kTwoPi = 6.283185307179586476925287;

// Reduce a phase into [0, 2*pi).
double wrap_phase(double x);

// Distance between two angles on the circle: min(|d| mod 2pi, 2pi - ...).
double circular_distance(double a, double b);

// Complex vector in planar layout: component i is re[i] + i*im[i].
struct ComplexVector {
  std::vector<double> re;
  std::vector<double> im;
  size_t size() const { return re.size(); }
};

// Unit-modulus relation vector: component i is exp(i*theta[i]).
struct PhaseVector {
  std::vector<double> theta;
  size_t size() const { return theta.size(); }
};

PhaseVector conjugate(const PhaseVector& r);

enum class ModelKind { RotatE, PRotatE, TransE, DistMult, ComplEx };

const char* model_name(ModelKind m);
ModelKind model_from_name(std::string_view name);

// Per-model parameter store. Row layouts (row-major, widths in doubles):
//   RotatE:   entity 2k [re|im], relation k (phases in [0, 2pi))
//   pRotatE:  entity k (phases), relation k (phases), fixed modulus C
//   TransE:   entity k, relation k
//   DistMult: entity k, relation k
//   ComplEx:  entity 2k [re|im], relation 2k [re|im]
struct EmbeddingTable {
  ModelKind model = ModelKind::RotatE;
  int k = 0;
  double modulus_c = 1.0;  // pRotatE entity modulus
  size_t num_entities = 0;
  size_t num_relations = 0;
  std::vector<double> entity;
  std::vector<double> relation;

  size_t entity_width() const {
    return (model == ModelKind::RotatE || model == ModelKind::ComplEx)
               ? size_t(2 * k)
               : size_t(k);
  }
  size_t relation_width() const {
    return model == ModelKind::ComplEx ? size_t(2 * k) : size_t(k);
  }
  std::span<double> entity_row(size_t id) {
    return {entity.data() + id * entity_width(), entity_width()};
  }
  std::span<const double> entity_row(size_t id) const {
    return {entity.data() + id * entity_width(), entity_width()};
  }
  std::span<double> relation_row(size_t id) {
    return {relation.data() + id * relation_width(), relation_width()};
  }
  std::span<const double> relation_row(size_t id) const {
    return {relation.data() + id * relation_width(), relation_width()};
  }
  void allocate() {
    entity.assign(num_entities * entity_width(), 0.0);
    relation.assign(num_relations * relation_width(), 0.0);
  }
};

// --- score and distance functions ------------------------------------------

// L1 norm of h o r - t in C^k, with o the elementwise rotation by r.
double rotate_distance(const ComplexVector& h, const PhaseVector& r,
                       const ComplexVector& t);

// Same distance in polar coordinates:
//   sum_i sqrt((mh_i - mt_i)^2 + 4 mh_i mt_i sin^2((th_i + tr_i - tt_i)/2))
double rotate_distance_polar(std::span<const double> m_h,
                             std::span<const double> theta_h,
                             std::span<const double> m_t,
                             std::span<const double> theta_t,
                             std::span<const double> theta_r);

// Phase-only variant with all entity moduli fixed to C:
//   2C * sum_i |sin((th_i + tr_i - tt_i)/2)|
double protate_distance(std::span<const double> theta_h,
                        std::span<const double> theta_r,
                        std::span<const double> theta_t, double modulus_c);

// L1 norm of h + r - t.
double transe_distance(std::span<const double> h, std::span<const double> r,
                       std::span<const double> t);

// sum_i h_i r_i t_i
double distmult_score(std::span<const double> h, std::span<const double> r,
                      std::span<const double> t);

// sum_i Re(r_i h_i conj(t_i))
double complex_score(const ComplexVector& h, const ComplexVector& r,
                     const ComplexVector& t);

// Uniform scoring facade: higher is more plausible; distance models return
// the negated distance.
double score(const EmbeddingTable& table, const Triple& t);

// Evaluates ||h o r - t|| and ||t o conj(r) - h|| independently; the two
// agree identically.
std::pair<double, double> inverse_relation_check(const ComplexVector& h,
                                                 const PhaseVector& r,
                                                 const ComplexVector& t);

// |protate(c*h', c*r', c*t', C=1/c) - transe(h', r', t')|: tends to 0 as
// c -> 0, matching the degeneration of the rotation model into translation.
double transe_degeneration_error(std::span<const double> h,
                                 std::span<const double> r,
                                 std::span<const double> t, double c);

// --- batched scoring --------------------------------------------------------

// Scores every candidate entity substituted into one side of a fixed triple.
// Arithmetic is identical to score() so rankings are reproducible against
// per-triple scoring; side-independent work (relation trig, the rotated or
// composed fixed operand) is hoisted out of the per-candidate loop.
class CandidateScorer {
 public:
  CandidateScorer(const EmbeddingTable& table, const Triple& t, Side side);
  // f-score of the triple with `candidate` substituted into the open slot.
  // Not const: reuses an internal scratch buffer. One instance per thread.
  double operator()(EntityId candidate);
  Side side() const { return side_; }

 private:
  const EmbeddingTable& table_;
  Side side_;
  int k_;
  RelationId relation_ = 0;
  std::vector<double> trig_;     // [cos|sin] of relation phases
  std::vector<double> fixed_;    // hoisted operand (model dependent)
  std::vector<double> scratch_;  // per-candidate compose buffer (head side)
};

// --- training support -------------------------------------------------------

// One positive plus candidate entities for its corrupted slot.
struct BatchExample {
  Triple positive;
  Side side;
  std::span<const EntityId> negatives;
};

// Sparse per-example gradient contributions, in insertion order.
struct GradSink {
  std::vector<uint32_t> entity_ids;
  std::vector<double> entity_data;
  std::vector<uint32_t> relation_ids;
  std::vector<double> relation_data;

  void clear() {
    entity_ids.clear();
    entity_data.clear();
    relation_ids.clear();
    relation_data.clear();
  }
  double* add_entity(uint32_t id, size_t width) {
    entity_ids.push_back(id);
    entity_data.resize(entity_data.size() + width, 0.0);
    return entity_data.data() + entity_data.size() - width;
  }
  double* add_relation(uint32_t id, size_t width) {
    relation_ids.push_back(id);
    relation_data.resize(relation_data.size() + width, 0.0);
    return relation_data.data() + relation_data.size() - width;
  }
};

// Generalized distances for [positive, negatives...]: d = -f for the product
// models so the loss layer sees one convention. out.size() == 1 + negatives.
void forward_distances(const EmbeddingTable& table, const BatchExample& ex,
                       std::span<double> out);

// Accumulates dL/dparams into sink given dL/dd for [positive, negatives...].
void backward_example(const EmbeddingTable& table, const BatchExample& ex,
                      std::span<const double> dl_dd, GradSink& sink);

}  // namespace kge
