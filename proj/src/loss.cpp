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
#include "kge/loss.hpp"

#include <cmath>
#include <string>

namespace kge {

const char* loss_name(LossKind l) {
  switch (l) {
    case LossKind::NegativeSampling: return "ns";
    case LossKind::SelfAdversarial: return "adv";
    case LossKind::MarginRanking: return "margin";
  }
  return "?";
}

LossKind loss_from_name(std::string_view name) {
  if (name == "ns") return LossKind::NegativeSampling;
  if (name == "adv") return LossKind::SelfAdversarial;
  if (name == "margin") return LossKind::MarginRanking;
  fail(Err::ParseError, "unknown loss '" + std::string(name) + "'");
}

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  double e = std::exp(x);
  return e / (1.0 + e);
}

double log_sigmoid(double x) {
  if (x >= 0.0) return -std::log1p(std::exp(-x));
  return x - std::log1p(std::exp(x));
}

double ns_loss(double pos_d, std::span<const double> neg_d, double gamma) {
  double loss = -log_sigmoid(gamma - pos_d);
  if (neg_d.empty()) return loss;
  double acc = 0.0;
  for (double d : neg_d) acc += log_sigmoid(d - gamma);
  return loss - acc / double(neg_d.size());
}

double self_adversarial_loss(double pos_d, std::span<const double> neg_d,
                             std::span<const double> weights, double gamma) {
  require(weights.size() == neg_d.size(), Err::WeightMismatch,
          "weights/negatives length");
  double loss = -log_sigmoid(gamma - pos_d);
  for (size_t i = 0; i < neg_d.size(); ++i)
    loss -= weights[i] * log_sigmoid(neg_d[i] - gamma);
  return loss;
}

double margin_ranking_loss(double pos_d, std::span<const double> neg_d,
                           std::span<const double> weights, double gamma) {
  require(weights.empty() || weights.size() == neg_d.size(),
          Err::WeightMismatch, "weights/negatives length");
  double loss = 0.0;
  double uniform = neg_d.empty() ? 0.0 : 1.0 / double(neg_d.size());
  for (size_t i = 0; i < neg_d.size(); ++i) {
    double w = weights.empty() ? uniform : weights[i];
    loss += w * std::max(0.0, gamma + pos_d - neg_d[i]);
  }
  return loss;
}

double loss_value(LossKind loss, double pos_d, std::span<const double> neg_d,
                  std::span<const double> weights, double gamma) {
  switch (loss) {
    case LossKind::NegativeSampling: return ns_loss(pos_d, neg_d, gamma);
    case LossKind::SelfAdversarial:
      return self_adversarial_loss(pos_d, neg_d, weights, gamma);
    case LossKind::MarginRanking:
      return margin_ranking_loss(pos_d, neg_d, weights, gamma);
  }
  return 0.0;
}

void loss_grad_distances(LossKind loss, double pos_d,
                         std::span<const double> neg_d,
                         std::span<const double> weights, double gamma,
                         std::span<double> out) {
  require(out.size() == neg_d.size() + 1, Err::ShapeMismatch,
          "gradient output size");
  const size_t n = neg_d.size();
  switch (loss) {
    case LossKind::NegativeSampling: {
      out[0] = sigmoid(pos_d - gamma);
      double inv_n = n > 0 ? 1.0 / double(n) : 0.0;
      for (size_t i = 0; i < n; ++i)
        out[i + 1] = -inv_n * sigmoid(gamma - neg_d[i]);
      break;
    }
    case LossKind::SelfAdversarial: {
      require(weights.size() == n, Err::WeightMismatch,
              "weights/negatives length");
      out[0] = sigmoid(pos_d - gamma);
      for (size_t i = 0; i < n; ++i)
        out[i + 1] = -weights[i] * sigmoid(gamma - neg_d[i]);
      break;
    }
    case LossKind::MarginRanking: {
      require(weights.empty() || weights.size() == n, Err::WeightMismatch,
              "weights/negatives length");
      double uniform = n > 0 ? 1.0 / double(n) : 0.0;
      double dpos = 0.0;
      for (size_t i = 0; i < n; ++i) {
        double w = weights.empty() ? uniform : weights[i];
        bool active = gamma + pos_d - neg_d[i] > 0.0;
        out[i + 1] = active ? -w : 0.0;
        if (active) dpos += w;
      }
      out[0] = dpos;
      break;
    }
  }
}

}  // namespace kge
