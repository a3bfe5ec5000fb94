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
#include "kge/config.hpp"

#include <fstream>

#include <json.hpp>

namespace kge {

using json = nlohmann::json;

void validate(const TrainConfig& cfg) {
  auto check = [](bool ok, const char* what) {
    require(ok, Err::ParseError, std::string("config: ") + what);
  };
  check(cfg.k >= 1, "k must be >= 1");
  check(cfg.batch_size >= 1, "b must be >= 1");
  check(cfg.negatives >= 1, "n must be >= 1");
  check(std::isfinite(cfg.alpha) && cfg.alpha >= 0.0, "alpha must be >= 0");
  check(cfg.gamma > 0.0, "gamma must be > 0");
  check(cfg.lr > 0.0, "lr must be > 0");
  check(cfg.max_steps >= 0, "max_steps must be >= 0");
  check(cfg.valid_every >= 0, "valid_every must be >= 0");
  check(cfg.modulus_c > 0.0, "modulus_c must be > 0");
  check(cfg.workers >= 1, "workers must be >= 1");
  check(cfg.init_width >= 0.0, "init_width must be >= 0");
}

namespace {

json to_json(const TrainConfig& c) {
  return json{{"model", model_name(c.model)},
              {"k", c.k},
              {"b", c.batch_size},
              {"n", c.negatives},
              {"alpha", c.alpha},
              {"gamma", c.gamma},
              {"loss", loss_name(c.loss)},
              {"lr", c.lr},
              {"max_steps", c.max_steps},
              {"valid_every", c.valid_every},
              {"seed", c.seed},
              {"modulus_c", c.modulus_c},
              {"workers", c.workers},
              {"init_width", c.init_width},
              {"lr_decay_step", c.lr_decay_step},
              {"filter_negatives", c.filter_negatives}};
}

void assign_field(TrainConfig& c, const std::string& key, const json& v) {
  try {
    if (key == "model")
      c.model = model_from_name(v.get<std::string>());
    else if (key == "k")
      c.k = v.get<int>();
    else if (key == "b")
      c.batch_size = v.get<int>();
    else if (key == "n")
      c.negatives = v.get<int>();
    else if (key == "alpha")
      c.alpha = v.get<double>();
    else if (key == "gamma")
      c.gamma = v.get<double>();
    else if (key == "loss")
      c.loss = loss_from_name(v.get<std::string>());
    else if (key == "lr")
      c.lr = v.get<double>();
    else if (key == "max_steps")
      c.max_steps = v.get<int64_t>();
    else if (key == "valid_every")
      c.valid_every = v.get<int64_t>();
    else if (key == "seed")
      c.seed = v.get<uint64_t>();
    else if (key == "modulus_c")
      c.modulus_c = v.get<double>();
    else if (key == "workers")
      c.workers = v.get<int>();
    else if (key == "init_width")
      c.init_width = v.get<double>();
    else if (key == "lr_decay_step")
      c.lr_decay_step = v.get<int64_t>();
    else if (key == "filter_negatives")
      c.filter_negatives = v.get<bool>();
    else
      fail(Err::UnknownKey, "config key '" + key + "'");
  } catch (const json::exception& e) {
    fail(Err::ParseError, "config key '" + key + "': " + e.what());
  }
}

void merge_object(TrainConfig& c, const json& obj) {
  require(obj.is_object(), Err::ParseError, "config root must be an object");
  for (auto it = obj.begin(); it != obj.end(); ++it)
    assign_field(c, it.key(), it.value());
}

}  // namespace

void apply_override(TrainConfig& cfg, const std::string& key,
                    const std::string& value) {
  // Flag values arrive as strings; route them through the JSON parser so
  // "0.5" and "true" coerce the same way file values do.
  json v = json::parse(value, nullptr, false);
  if (v.is_discarded()) v = value;  // bare strings (model/loss names)
  assign_field(cfg, key, v);
}

TrainConfig load_config(
    const std::optional<std::filesystem::path>& file,
    const std::vector<std::pair<std::string, std::string>>& overrides) {
  TrainConfig cfg;
  if (file) {
    std::ifstream in(*file);
    require(in.good(), Err::MissingFile, "cannot open " + file->string());
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    if (!text.empty()) {
      json obj = json::parse(text, nullptr, false);
      require(!obj.is_discarded(), Err::ParseError,
              "invalid JSON in " + file->string());
      merge_object(cfg, obj);
    }
  }
  for (const auto& [key, value] : overrides) apply_override(cfg, key, value);
  validate(cfg);
  return cfg;
}

std::string config_to_json(const TrainConfig& cfg, int indent) {
  return to_json(cfg).dump(indent);
}

TrainConfig config_from_json(const std::string& text) {
  json obj = json::parse(text, nullptr, false);
  require(!obj.is_discarded(), Err::ParseError, "invalid config JSON");
  TrainConfig cfg;
  merge_object(cfg, obj);
  validate(cfg);
  return cfg;
}

}  // namespace kge
