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
#include <vector>

#include "kge/common.hpp"

namespace kge {

enum class LossKind { NegativeSampling, SelfAdversarial, MarginRanking };

const char* loss_name(LossKind l);
LossKind loss_from_name(std::string_view name);

double sigmoid(double x);

// log(1/(1+exp(-x))), stable for large |x|.
double log_sigmoid(double x);

// -log s(gamma - pos_d) - (1/n) sum_i log s(neg_d_i - gamma)
double ns_loss(double pos_d, std::span<const double> neg_d, double gamma);

// -log s(gamma - pos_d) - sum_i w_i log s(neg_d_i - gamma); weights on the
// simplex, held constant under differentiation.
double self_adversarial_loss(double pos_d, std::span<const double> neg_d,
                             std::span<const double> weights, double gamma);

// sum_i w_i max(0, gamma + pos_d - neg_d_i); empty weights mean uniform 1/n.
double margin_ranking_loss(double pos_d, std::span<const double> neg_d,
                           std::span<const double> weights, double gamma);

// dL/dd for [positive, negatives...] under the given loss, with weights as
// constants. Used by training and by the finite-difference gradient checks.
void loss_grad_distances(LossKind loss, double pos_d,
                         std::span<const double> neg_d,
                         std::span<const double> weights, double gamma,
                         std::span<double> out_dl_dd);

// Loss value under the same conventions as loss_grad_distances.
double loss_value(LossKind loss, double pos_d, std::span<const double> neg_d,
                  std::span<const double> weights, double gamma);

}  // namespace kge
