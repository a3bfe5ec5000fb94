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

#include <filesystem>
#include <vector>

#include "kge/model.hpp"

namespace kge {

// A relation's embedding phases with a histogram over [0, 2pi).
struct PhaseProfile {
  RelationId relation = 0;
  std::vector<double> theta;        // wrapped into [0, 2pi)
  std::vector<uint32_t> histogram;  // bin counts; sum == k
};

inline constexpr int kDefaultHistogramBins = 60;

// Extracts the phase profile of a rotation-model relation. Throws
// WrongModelKind for models without relation phases.
PhaseProfile relation_phases(const EmbeddingTable& table, RelationId r,
                             int bins = kDefaultHistogramBins);

// Mean circular distance of each phase to the nearest of {0, pi}; zero iff
// the relation is an exact elementwise-involution (symmetry) solution.
double symmetry_residual(const PhaseProfile& p);

// Mean circular distance of wrap(theta1 + theta2) from 0; zero iff the two
// relations are exact conjugates (inverse pair).
double inversion_residual(const PhaseProfile& p1, const PhaseProfile& p2);

// Mean circular distance of wrap(theta2 + theta3 - theta1) from 0; zero iff
// r1 composes r2 and r3 exactly.
double composition_residual(const PhaseProfile& p1, const PhaseProfile& p2,
                            const PhaseProfile& p3);

// CSV rows `bin_lo,bin_hi,count` over B equal bins of [0, 2pi).
void export_histogram(const PhaseProfile& p, int bins,
                      const std::filesystem::path& path);

std::vector<uint32_t> phase_histogram(std::span<const double> theta, int bins);

}  // namespace kge
