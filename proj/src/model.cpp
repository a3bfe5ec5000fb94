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
#include "kge/model.hpp"

#include <cmath>
#include <cstring>

namespace kge {

double wrap_phase(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r -= kTwoPi;  // fmod rounding can land exactly on 2pi
  return r;
}

double circular_distance(double a, double b) {
  double d = std::fabs(a - b);
  d = std::fmod(d, kTwoPi);
  return std::min(d, kTwoPi - d);
}

PhaseVector conjugate(const PhaseVector& r) {
  PhaseVector out;
  out.theta.reserve(r.theta.size());
  for (double th : r.theta) out.theta.push_back(wrap_phase(-th));
  return out;
}

const char* model_name(ModelKind m) {
  switch (m) {
    case ModelKind::RotatE: return "rotate";
    case ModelKind::PRotatE: return "protate";
    case ModelKind::TransE: return "transe";
    case ModelKind::DistMult: return "distmult";
    case ModelKind::ComplEx: return "complex";
  }
  return "?";
}

ModelKind model_from_name(std::string_view name) {
  if (name == "rotate") return ModelKind::RotatE;
  if (name == "protate") return ModelKind::PRotatE;
  if (name == "transe") return ModelKind::TransE;
  if (name == "distmult") return ModelKind::DistMult;
  if (name == "complex") return ModelKind::ComplEx;
  fail(Err::ParseError, "unknown model '" + std::string(name) + "'");
}

namespace {

void check_dims(size_t a, size_t b, const char* what) {
  require(a == b, Err::DimensionMismatch, what);
}

// Every model factors into compose(relation, head) followed by a reduction
// against the tail row. score(), CandidateScorer and forward_distances all
// run exactly these kernels so candidate rankings never depend on which
// entry point produced the score.

// trig layout for the rotation models: [cos(theta_0..k-1) | sin(...)]
void fill_trig(std::span<const double> theta, double* trig, int k) {
  for (int i = 0; i < k; ++i) {
    trig[i] = std::cos(theta[i]);
    trig[k + i] = std::sin(theta[i]);
  }
}

void compose_rotate(const double* trig, const double* h, double* out, int k) {
  const double* c = trig;
  const double* s = trig + k;
  for (int i = 0; i < k; ++i) {
    out[i] = c[i] * h[i] - s[i] * h[k + i];
    out[k + i] = s[i] * h[i] + c[i] * h[k + i];
  }
}

double reduce_l1_complex(const double* a, const double* b, int k) {
  double acc = 0.0;
  for (int i = 0; i < k; ++i) {
    double dx = a[i] - b[i];
    double dy = a[k + i] - b[k + i];
    acc += std::sqrt(dx * dx + dy * dy);
  }
  return acc;
}

void compose_add(const double* r, const double* h, double* out, int k) {
  for (int i = 0; i < k; ++i) out[i] = h[i] + r[i];
}

double reduce_l1(const double* a, const double* b, int k) {
  double acc = 0.0;
  for (int i = 0; i < k; ++i) acc += std::fabs(a[i] - b[i]);
  return acc;
}

double reduce_protate(const double* a, const double* b, int k, double c2) {
  double acc = 0.0;
  for (int i = 0; i < k; ++i) acc += std::fabs(std::sin((a[i] - b[i]) * 0.5));
  return 2.0 * c2 * acc;
}

void compose_mul(const double* r, const double* h, double* out, int k) {
  for (int i = 0; i < k; ++i) out[i] = h[i] * r[i];
}

double reduce_dot(const double* a, const double* b, int k) {
  double acc = 0.0;
  for (int i = 0; i < k; ++i) acc += a[i] * b[i];
  return acc;
}

void compose_cmul(const double* r, const double* h, double* out, int k) {
  for (int i = 0; i < k; ++i) {
    out[i] = r[i] * h[i] - r[k + i] * h[k + i];
    out[k + i] = r[i] * h[k + i] + r[k + i] * h[i];
  }
}

// Re(sum p_i conj(t_i)) for planar complex p, t.
double reduce_cdot_conj(const double* p, const double* t, int k) {
  double acc = 0.0;
  for (int i = 0; i < k; ++i) acc += p[i] * t[i] + p[k + i] * t[k + i];
  return acc;
}

// compose into `out` for the given model; h is the head row.
void compose(ModelKind m, const double* trig, std::span<const double> rel,
             const double* h, double* out, int k) {
  switch (m) {
    case ModelKind::RotatE: compose_rotate(trig, h, out, k); break;
    case ModelKind::PRotatE: compose_add(rel.data(), h, out, k); break;
    case ModelKind::TransE: compose_add(rel.data(), h, out, k); break;
    case ModelKind::DistMult: compose_mul(rel.data(), h, out, k); break;
    case ModelKind::ComplEx: compose_cmul(rel.data(), h, out, k); break;
  }
}

// Raw value of the reduction: a distance for the distance models, the score
// for the product models.
double reduce(ModelKind m, const double* composed, const double* tail, int k,
              double modulus_c) {
  switch (m) {
    case ModelKind::RotatE: return reduce_l1_complex(composed, tail, k);
    case ModelKind::PRotatE: return reduce_protate(composed, tail, k, modulus_c);
    case ModelKind::TransE: return reduce_l1(composed, tail, k);
    case ModelKind::DistMult: return reduce_dot(composed, tail, k);
    case ModelKind::ComplEx: return reduce_cdot_conj(composed, tail, k);
  }
  return 0.0;
}

bool is_distance_model(ModelKind m) {
  return m == ModelKind::RotatE || m == ModelKind::PRotatE ||
         m == ModelKind::TransE;
}

double sgn(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

}  // namespace

double rotate_distance(const ComplexVector& h, const PhaseVector& r,
                       const ComplexVector& t) {
  const size_t k = r.size();
  check_dims(h.re.size(), h.im.size(), "head re/im lengths differ");
  check_dims(t.re.size(), t.im.size(), "tail re/im lengths differ");
  check_dims(h.size(), k, "head/relation dimension");
  check_dims(t.size(), k, "tail/relation dimension");
  std::vector<double> trig(2 * k), hp(2 * k), tp(2 * k), rot(2 * k);
  std::memcpy(hp.data(), h.re.data(), k * sizeof(double));
  std::memcpy(hp.data() + k, h.im.data(), k * sizeof(double));
  std::memcpy(tp.data(), t.re.data(), k * sizeof(double));
  std::memcpy(tp.data() + k, t.im.data(), k * sizeof(double));
  fill_trig(r.theta, trig.data(), int(k));
  compose_rotate(trig.data(), hp.data(), rot.data(), int(k));
  return reduce_l1_complex(rot.data(), tp.data(), int(k));
}

double rotate_distance_polar(std::span<const double> m_h,
                             std::span<const double> theta_h,
                             std::span<const double> m_t,
                             std::span<const double> theta_t,
                             std::span<const double> theta_r) {
  const size_t k = theta_r.size();
  check_dims(m_h.size(), k, "m_h dimension");
  check_dims(theta_h.size(), k, "theta_h dimension");
  check_dims(m_t.size(), k, "m_t dimension");
  check_dims(theta_t.size(), k, "theta_t dimension");
  double acc = 0.0;
  for (size_t i = 0; i < k; ++i) {
    require(m_h[i] >= 0.0 && m_t[i] >= 0.0, Err::NegativeModulus,
            "moduli must be nonnegative");
    double dm = m_h[i] - m_t[i];
    double s = std::sin((theta_h[i] + theta_r[i] - theta_t[i]) * 0.5);
    acc += std::sqrt(dm * dm + 4.0 * m_h[i] * m_t[i] * s * s);
  }
  return acc;
}

double protate_distance(std::span<const double> theta_h,
                        std::span<const double> theta_r,
                        std::span<const double> theta_t, double modulus_c) {
  const size_t k = theta_r.size();
  check_dims(theta_h.size(), k, "theta_h dimension");
  check_dims(theta_t.size(), k, "theta_t dimension");
  std::vector<double> u(k);
  compose_add(theta_r.data(), theta_h.data(), u.data(), int(k));
  return reduce_protate(u.data(), theta_t.data(), int(k), modulus_c);
}

double transe_distance(std::span<const double> h, std::span<const double> r,
                       std::span<const double> t) {
  const size_t k = r.size();
  check_dims(h.size(), k, "head dimension");
  check_dims(t.size(), k, "tail dimension");
  std::vector<double> u(k);
  compose_add(r.data(), h.data(), u.data(), int(k));
  return reduce_l1(u.data(), t.data(), int(k));
}

double distmult_score(std::span<const double> h, std::span<const double> r,
                      std::span<const double> t) {
  const size_t k = r.size();
  check_dims(h.size(), k, "head dimension");
  check_dims(t.size(), k, "tail dimension");
  std::vector<double> u(k);
  compose_mul(r.data(), h.data(), u.data(), int(k));
  return reduce_dot(u.data(), t.data(), int(k));
}

double complex_score(const ComplexVector& h, const ComplexVector& r,
                     const ComplexVector& t) {
  const size_t k = r.size();
  check_dims(h.size(), k, "head dimension");
  check_dims(t.size(), k, "tail dimension");
  std::vector<double> hp(2 * k), rp(2 * k), tp(2 * k), p(2 * k);
  std::memcpy(hp.data(), h.re.data(), k * sizeof(double));
  std::memcpy(hp.data() + k, h.im.data(), k * sizeof(double));
  std::memcpy(rp.data(), r.re.data(), k * sizeof(double));
  std::memcpy(rp.data() + k, r.im.data(), k * sizeof(double));
  std::memcpy(tp.data(), t.re.data(), k * sizeof(double));
  std::memcpy(tp.data() + k, t.im.data(), k * sizeof(double));
  compose_cmul(rp.data(), hp.data(), p.data(), int(k));
  return reduce_cdot_conj(p.data(), tp.data(), int(k));
}

std::pair<double, double> inverse_relation_check(const ComplexVector& h,
                                                 const PhaseVector& r,
                                                 const ComplexVector& t) {
  return {rotate_distance(h, r, t), rotate_distance(t, conjugate(r), h)};
}

double transe_degeneration_error(std::span<const double> h,
                                 std::span<const double> r,
                                 std::span<const double> t, double c) {
  const size_t k = h.size();
  std::vector<double> th(k), tr(k), tt(k);
  for (size_t i = 0; i < k; ++i) {
    th[i] = c * h[i];
    tr[i] = c * r[i];
    tt[i] = c * t[i];
  }
  double lhs = protate_distance(th, tr, tt, 1.0 / c);
  double rhs = transe_distance(h, r, t);
  return std::fabs(lhs - rhs);
}

CandidateScorer::CandidateScorer(const EmbeddingTable& table, const Triple& t,
                                 Side side)
    : table_(table), side_(side), k_(table.k) {
  require(t.head < table.num_entities && t.tail < table.num_entities &&
              t.relation < table.num_relations,
          Err::IdOutOfRange, "triple ids out of range");
  auto rel = table.relation_row(t.relation);
  if (table.model == ModelKind::RotatE || table.model == ModelKind::PRotatE) {
    trig_.resize(2 * k_);
    fill_trig(rel, trig_.data(), k_);  // pRotatE keeps it unused; harmless
  }
  fixed_.resize(table.entity_width());
  if (side == Side::Tail) {
    // hoist compose(relation, head); candidates fill the tail slot
    compose(table.model, trig_.data(), rel,
            table.entity_row(t.head).data(), fixed_.data(), k_);
  } else {
    // candidates fill the head slot; keep the tail row
    auto tail = table.entity_row(t.tail);
    std::memcpy(fixed_.data(), tail.data(), tail.size() * sizeof(double));
    scratch_.resize(table.entity_width());
  }
  relation_ = t.relation;
}

double CandidateScorer::operator()(EntityId candidate) {
  require(candidate < table_.num_entities, Err::IdOutOfRange,
          "candidate entity out of range");
  const ModelKind m = table_.model;
  auto rel = table_.relation_row(relation_);
  double raw;
  if (side_ == Side::Tail) {
    raw = reduce(m, fixed_.data(), table_.entity_row(candidate).data(), k_,
                 table_.modulus_c);
  } else {
    compose(m, trig_.data(), rel, table_.entity_row(candidate).data(),
            scratch_.data(), k_);
    raw = reduce(m, scratch_.data(), fixed_.data(), k_, table_.modulus_c);
  }
  return is_distance_model(m) ? -raw : raw;
}

double score(const EmbeddingTable& table, const Triple& t) {
  CandidateScorer scorer(table, t, Side::Tail);
  return scorer(t.tail);
}

void forward_distances(const EmbeddingTable& table, const BatchExample& ex,
                       std::span<double> out) {
  require(out.size() == ex.negatives.size() + 1, Err::ShapeMismatch,
          "forward_distances output size");
  CandidateScorer scorer(table, ex.positive, ex.side);
  EntityId pos_entity =
      ex.side == Side::Tail ? ex.positive.tail : ex.positive.head;
  out[0] = -scorer(pos_entity);
  for (size_t j = 0; j < ex.negatives.size(); ++j)
    out[j + 1] = -scorer(ex.negatives[j]);
}

namespace {

// Gradient helpers; each accumulates d(distance)/d(row) contributions.
// Distances here follow the forward convention (d = -f for product models).

struct BackwardCtx {
  const EmbeddingTable& table;
  const BatchExample& ex;
  std::span<const double> coef;  // dL/dd for [positive, negatives...]
  GradSink& sink;
  int k;

  EntityId candidate_id(size_t j) const {
    return j == 0 ? (ex.side == Side::Tail ? ex.positive.tail
                                           : ex.positive.head)
                  : ex.negatives[j - 1];
  }
  size_t count() const { return ex.negatives.size() + 1; }
};

void backward_rotate(BackwardCtx& c) {
  const int k = c.k;
  const auto& table = c.table;
  auto rel = table.relation_row(c.ex.positive.relation);
  std::vector<double> trig(2 * k);
  fill_trig(rel, trig.data(), k);
  const double* cs = trig.data();
  const double* sn = trig.data() + k;

  std::vector<double> rot(2 * k), grot(2 * k, 0.0), gtheta(k, 0.0);
  const bool tail_side = c.ex.side == Side::Tail;
  const double* fixed_row =
      table
          .entity_row(tail_side ? c.ex.positive.head : c.ex.positive.tail)
          .data();
  if (tail_side) compose_rotate(trig.data(), fixed_row, rot.data(), k);

  std::vector<double> gfix(2 * k, 0.0);
  for (size_t j = 0; j < c.count(); ++j) {
    double coef = c.coef[j];
    if (coef == 0.0) continue;
    const double* cand = table.entity_row(c.candidate_id(j)).data();
    double* gcand = c.sink.add_entity(c.candidate_id(j), 2 * k);
    if (tail_side) {
      // d = sum |rot(h) - t_j|
      for (int i = 0; i < k; ++i) {
        double dx = rot[i] - cand[i];
        double dy = rot[k + i] - cand[k + i];
        double m = std::sqrt(dx * dx + dy * dy);
        double ux = m > 0.0 ? dx / m : 0.0;
        double uy = m > 0.0 ? dy / m : 0.0;
        gcand[i] = -coef * ux;
        gcand[k + i] = -coef * uy;
        grot[i] += coef * ux;
        grot[k + i] += coef * uy;
      }
    } else {
      // d = sum |rot(h_j) - t|
      compose_rotate(trig.data(), cand, rot.data(), k);
      std::vector<double> u(2 * k);
      for (int i = 0; i < k; ++i) {
        double dx = rot[i] - fixed_row[i];
        double dy = rot[k + i] - fixed_row[k + i];
        double m = std::sqrt(dx * dx + dy * dy);
        u[i] = m > 0.0 ? dx / m : 0.0;
        u[k + i] = m > 0.0 ? dy / m : 0.0;
        gfix[i] -= coef * u[i];
        gfix[k + i] -= coef * u[k + i];
        gtheta[i] += coef * (u[i] * -rot[k + i] + u[k + i] * rot[i]);
        // chain back through the rotation of this candidate
        gcand[i] = coef * (cs[i] * u[i] + sn[i] * u[k + i]);
        gcand[k + i] = coef * (-sn[i] * u[i] + cs[i] * u[k + i]);
      }
    }
  }
  if (tail_side) {
    for (int i = 0; i < k; ++i)
      gtheta[i] = grot[i] * -rot[k + i] + grot[k + i] * rot[i];
    double* gh = c.sink.add_entity(c.ex.positive.head, 2 * k);
    for (int i = 0; i < k; ++i) {
      gh[i] = cs[i] * grot[i] + sn[i] * grot[k + i];
      gh[k + i] = -sn[i] * grot[i] + cs[i] * grot[k + i];
    }
  } else {
    double* gt = c.sink.add_entity(c.ex.positive.tail, 2 * k);
    std::memcpy(gt, gfix.data(), 2 * k * sizeof(double));
  }
  double* gr = c.sink.add_relation(c.ex.positive.relation, k);
  std::memcpy(gr, gtheta.data(), k * sizeof(double));
}

void backward_protate(BackwardCtx& c) {
  const int k = c.k;
  const auto& table = c.table;
  const double C = table.modulus_c;
  auto rel = table.relation_row(c.ex.positive.relation);
  const bool tail_side = c.ex.side == Side::Tail;
  const double* fixed_row =
      table
          .entity_row(tail_side ? c.ex.positive.head : c.ex.positive.tail)
          .data();
  std::vector<double> gsum(k, 0.0);
  for (size_t j = 0; j < c.count(); ++j) {
    double coef = c.coef[j];
    if (coef == 0.0) continue;
    const double* cand = table.entity_row(c.candidate_id(j)).data();
    double* gcand = c.sink.add_entity(c.candidate_id(j), k);
    for (int i = 0; i < k; ++i) {
      double delta = tail_side ? fixed_row[i] + rel[i] - cand[i]
                               : cand[i] + rel[i] - fixed_row[i];
      double half = delta * 0.5;
      double f = C * std::cos(half) * sgn(std::sin(half));
      // d(delta)/d(corrupted slot): -1 on the tail side, +1 on the head side
      gcand[i] = tail_side ? -coef * f : coef * f;
      gsum[i] += coef * f;
    }
  }
  double* gfixed = c.sink.add_entity(
      tail_side ? c.ex.positive.head : c.ex.positive.tail, k);
  for (int i = 0; i < k; ++i) gfixed[i] = tail_side ? gsum[i] : -gsum[i];
  double* gr = c.sink.add_relation(c.ex.positive.relation, k);
  std::memcpy(gr, gsum.data(), k * sizeof(double));
}

void backward_transe(BackwardCtx& c) {
  const int k = c.k;
  const auto& table = c.table;
  auto rel = table.relation_row(c.ex.positive.relation);
  const bool tail_side = c.ex.side == Side::Tail;
  const double* fixed_row =
      table
          .entity_row(tail_side ? c.ex.positive.head : c.ex.positive.tail)
          .data();
  std::vector<double> gsum(k, 0.0);
  for (size_t j = 0; j < c.count(); ++j) {
    double coef = c.coef[j];
    if (coef == 0.0) continue;
    const double* cand = table.entity_row(c.candidate_id(j)).data();
    double* gcand = c.sink.add_entity(c.candidate_id(j), k);
    for (int i = 0; i < k; ++i) {
      double z = tail_side ? fixed_row[i] + rel[i] - cand[i]
                           : cand[i] + rel[i] - fixed_row[i];
      double f = sgn(z);
      gcand[i] = tail_side ? -coef * f : coef * f;
      gsum[i] += coef * f;
    }
  }
  double* gfixed = c.sink.add_entity(
      tail_side ? c.ex.positive.head : c.ex.positive.tail, k);
  for (int i = 0; i < k; ++i) gfixed[i] = tail_side ? gsum[i] : -gsum[i];
  double* gr = c.sink.add_relation(c.ex.positive.relation, k);
  std::memcpy(gr, gsum.data(), k * sizeof(double));
}

void backward_distmult(BackwardCtx& c) {
  const int k = c.k;
  const auto& table = c.table;
  auto rel = table.relation_row(c.ex.positive.relation);
  const bool tail_side = c.ex.side == Side::Tail;
  const double* fixed_row =
      table
          .entity_row(tail_side ? c.ex.positive.head : c.ex.positive.tail)
          .data();
  // d = -f, so every gradient below carries a leading minus.
  std::vector<double> u(k);  // fixed_row o relation
  for (int i = 0; i < k; ++i) u[i] = fixed_row[i] * rel[i];
  std::vector<double> s(k, 0.0);  // sum_j coef_j * candidate_j
  for (size_t j = 0; j < c.count(); ++j) {
    double coef = c.coef[j];
    if (coef == 0.0) continue;
    const double* cand = table.entity_row(c.candidate_id(j)).data();
    double* gcand = c.sink.add_entity(c.candidate_id(j), k);
    for (int i = 0; i < k; ++i) {
      gcand[i] = -coef * u[i];
      s[i] += coef * cand[i];
    }
  }
  double* gfixed = c.sink.add_entity(
      tail_side ? c.ex.positive.head : c.ex.positive.tail, k);
  double* gr = c.sink.add_relation(c.ex.positive.relation, k);
  for (int i = 0; i < k; ++i) {
    gfixed[i] = -s[i] * rel[i];
    gr[i] = -s[i] * fixed_row[i];
  }
}

void backward_complex(BackwardCtx& c) {
  const int k = c.k;
  const auto& table = c.table;
  auto rel = table.relation_row(c.ex.positive.relation);
  const double* rre = rel.data();
  const double* rim = rel.data() + k;
  const bool tail_side = c.ex.side == Side::Tail;
  const double* fx =
      table
          .entity_row(tail_side ? c.ex.positive.head : c.ex.positive.tail)
          .data();
  // f = sum Re(r o h o conj(t)); d = -f.
  std::vector<double> base(2 * k);
  if (tail_side) {
    // base = r o h; grad wrt candidate tail is -coef * base
    for (int i = 0; i < k; ++i) {
      base[i] = rre[i] * fx[i] - rim[i] * fx[k + i];
      base[k + i] = rre[i] * fx[k + i] + rim[i] * fx[i];
    }
  } else {
    // base = conj(r) o t; grad wrt candidate head is -coef * base
    for (int i = 0; i < k; ++i) {
      base[i] = rre[i] * fx[i] + rim[i] * fx[k + i];
      base[k + i] = rre[i] * fx[k + i] - rim[i] * fx[i];
    }
  }
  std::vector<double> s(2 * k, 0.0);  // sum_j coef_j * candidate_j
  for (size_t j = 0; j < c.count(); ++j) {
    double coef = c.coef[j];
    if (coef == 0.0) continue;
    const double* cand = table.entity_row(c.candidate_id(j)).data();
    double* gcand = c.sink.add_entity(c.candidate_id(j), 2 * k);
    for (int i = 0; i < 2 * k; ++i) {
      gcand[i] = -coef * base[i];
      s[i] += coef * cand[i];
    }
  }
  double* gfixed = c.sink.add_entity(
      tail_side ? c.ex.positive.head : c.ex.positive.tail, 2 * k);
  double* gr = c.sink.add_relation(c.ex.positive.relation, 2 * k);
  if (tail_side) {
    // grad_h = -conj(r) o S, grad_r = -conj(h) o S
    for (int i = 0; i < k; ++i) {
      gfixed[i] = -(rre[i] * s[i] + rim[i] * s[k + i]);
      gfixed[k + i] = -(rre[i] * s[k + i] - rim[i] * s[i]);
      gr[i] = -(fx[i] * s[i] + fx[k + i] * s[k + i]);
      gr[k + i] = -(fx[i] * s[k + i] - fx[k + i] * s[i]);
    }
  } else {
    // grad_t = -r o S, grad_r = -conj(S) o t
    for (int i = 0; i < k; ++i) {
      gfixed[i] = -(rre[i] * s[i] - rim[i] * s[k + i]);
      gfixed[k + i] = -(rre[i] * s[k + i] + rim[i] * s[i]);
      gr[i] = -(s[i] * fx[i] + s[k + i] * fx[k + i]);
      gr[k + i] = -(s[i] * fx[k + i] - s[k + i] * fx[i]);
    }
  }
}

}  // namespace

void backward_example(const EmbeddingTable& table, const BatchExample& ex,
                      std::span<const double> dl_dd, GradSink& sink) {
  require(dl_dd.size() == ex.negatives.size() + 1, Err::ShapeMismatch,
          "coefficient count");
  BackwardCtx ctx{table, ex, dl_dd, sink, table.k};
  switch (table.model) {
    case ModelKind::RotatE: backward_rotate(ctx); break;
    case ModelKind::PRotatE: backward_protate(ctx); break;
    case ModelKind::TransE: backward_transe(ctx); break;
    case ModelKind::DistMult: backward_distmult(ctx); break;
    case ModelKind::ComplEx: backward_complex(ctx); break;
  }
}

}  // namespace kge
