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
#include "kge/patterns.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace kge {

std::vector<uint32_t> phase_histogram(std::span<const double> theta,
                                      int bins) {
  require(bins >= 2, Err::ShapeMismatch, "need at least 2 bins");
  std::vector<uint32_t> counts(size_t(bins), 0);
  for (double th : theta) {
    int bin = int(th / kTwoPi * double(bins));
    if (bin >= bins) bin = bins - 1;  // wrap guard at the seam
    if (bin < 0) bin = 0;
    counts[size_t(bin)]++;
  }
  return counts;
}

PhaseProfile relation_phases(const EmbeddingTable& table, RelationId r,
                             int bins) {
  require(table.model == ModelKind::RotatE || table.model == ModelKind::PRotatE,
          Err::WrongModelKind,
          "relation phases require a rotation model, got " +
              std::string(model_name(table.model)));
  require(r < table.num_relations, Err::IdOutOfRange, "relation id");
  PhaseProfile p;
  p.relation = r;
  auto row = table.relation_row(r);
  p.theta.reserve(row.size());
  for (double th : row) p.theta.push_back(wrap_phase(th));
  p.histogram = phase_histogram(p.theta, bins);
  return p;
}

double symmetry_residual(const PhaseProfile& p) {
  require(!p.theta.empty(), Err::ShapeMismatch, "empty profile");
  double acc = 0.0;
  for (double th : p.theta) {
    double d0 = circular_distance(th, 0.0);
    double dpi = circular_distance(th, M_PI);
    acc += std::min(d0, dpi);
  }
  return acc / double(p.theta.size());
}

double inversion_residual(const PhaseProfile& p1, const PhaseProfile& p2) {
  require(p1.theta.size() == p2.theta.size(), Err::DimensionMismatch,
          "profile dimensions differ");
  require(!p1.theta.empty(), Err::ShapeMismatch, "empty profile");
  double acc = 0.0;
  for (size_t i = 0; i < p1.theta.size(); ++i)
    acc += circular_distance(wrap_phase(p1.theta[i] + p2.theta[i]), 0.0);
  return acc / double(p1.theta.size());
}

double composition_residual(const PhaseProfile& p1, const PhaseProfile& p2,
                            const PhaseProfile& p3) {
  require(p1.theta.size() == p2.theta.size() &&
              p1.theta.size() == p3.theta.size(),
          Err::DimensionMismatch, "profile dimensions differ");
  require(!p1.theta.empty(), Err::ShapeMismatch, "empty profile");
  double acc = 0.0;
  for (size_t i = 0; i < p1.theta.size(); ++i) {
    double sum = wrap_phase(p2.theta[i] + p3.theta[i] - p1.theta[i]);
    acc += circular_distance(sum, 0.0);
  }
  return acc / double(p1.theta.size());
}

void export_histogram(const PhaseProfile& p, int bins,
                      const std::filesystem::path& path) {
  auto counts = phase_histogram(p.theta, bins);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  require(out.good(), Err::IoError, "cannot write " + path.string());
  char buf[128];
  for (int b = 0; b < bins; ++b) {
    double lo = kTwoPi * double(b) / double(bins);
    double hi = kTwoPi * double(b + 1) / double(bins);
    std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%u\n", lo, hi,
                  counts[size_t(b)]);
    out << buf;
  }
  out.flush();
  require(out.good(), Err::IoError, "write failed for " + path.string());
}

}  // namespace kge
