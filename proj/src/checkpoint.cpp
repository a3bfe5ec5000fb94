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
#include "kge/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <unordered_map>

#include <json.hpp>

namespace kge {

using json = nlohmann::json;

static_assert(std::endian::native == std::endian::little,
              "checkpoint writer assumes a little-endian host");

namespace {

constexpr char kMagic[4] = {'K', 'G', 'R', 'T'};
constexpr uint16_t kVersion = 1;

struct ArrayRef {
  std::string name;
  const std::vector<double>* data;
};

json history_to_json(const std::vector<ValidRecord>& history) {
  json arr = json::array();
  for (const ValidRecord& r : history) {
    arr.push_back(json{{"step", r.step},
                       {"loss", r.loss},
                       {"mr", r.mr},
                       {"mrr", r.mrr},
                       {"h1", r.h1},
                       {"h3", r.h3},
                       {"h10", r.h10}});
  }
  return arr;
}

std::vector<ValidRecord> history_from_json(const json& arr) {
  std::vector<ValidRecord> out;
  for (const auto& r : arr) {
    out.push_back(ValidRecord{r.at("step").get<int64_t>(),
                              r.at("loss").get<double>(),
                              r.at("mr").get<double>(),
                              r.at("mrr").get<double>(),
                              r.at("h1").get<double>(),
                              r.at("h3").get<double>(),
                              r.at("h10").get<double>()});
  }
  return out;
}

void append_bytes(std::string& out, const void* data, size_t n) {
  out.append(reinterpret_cast<const char*>(data), n);
}

}  // namespace

uint64_t fnv1a64(std::span<const uint8_t> bytes, uint64_t seed) {
  uint64_t h = seed;
  for (uint8_t b : bytes) {
    h ^= b;
    h *= 1099511628211ULL;
  }
  return h;
}

void save_checkpoint(const Checkpoint& cp, const std::filesystem::path& path) {
  std::vector<ArrayRef> arrays{
      {"entity", &cp.table.entity},
      {"relation", &cp.table.relation},
      {"adam_m_entity", &cp.opt.m_entity},
      {"adam_v_entity", &cp.opt.v_entity},
      {"adam_m_relation", &cp.opt.m_relation},
      {"adam_v_relation", &cp.opt.v_relation},
  };
  if (cp.best_table) {
    arrays.push_back({"best_entity", &cp.best_table->entity});
    arrays.push_back({"best_relation", &cp.best_table->relation});
  }

  json header{
      {"config", json::parse(config_to_json(cp.config))},
      {"num_entities", cp.table.num_entities},
      {"num_relations", cp.table.num_relations},
      {"step", cp.step},
      {"adam_step", cp.opt.step},
      {"rng_state", cp.rng_state},
      {"history", history_to_json(cp.history)},
      {"best_mrr", cp.best_mrr},
      {"best_step", cp.best_step},
      {"checksum", "fnv1a64"},
  };
  json shapes = json::array();
  for (const ArrayRef& a : arrays)
    shapes.push_back(json{{"name", a.name}, {"len", a.data->size()}});
  header["arrays"] = shapes;

  std::string payload;
  append_bytes(payload, kMagic, 4);
  append_bytes(payload, &kVersion, 2);
  const std::string header_text = header.dump();
  const uint32_t header_len = uint32_t(header_text.size());
  append_bytes(payload, &header_len, 4);
  payload += header_text;
  for (const ArrayRef& a : arrays)
    append_bytes(payload, a.data->data(), a.data->size() * sizeof(double));
  const uint64_t digest = fnv1a64(
      {reinterpret_cast<const uint8_t*>(payload.data()), payload.size()});
  append_bytes(payload, &digest, 8);

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  require(out.good(), Err::IoError, "cannot write " + path.string());
  out.write(payload.data(), std::streamsize(payload.size()));
  out.flush();
  require(out.good(), Err::IoError, "write failed for " + path.string());
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), Err::IoError, "cannot open " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());

  require(bytes.size() >= 4 + 2 + 4 + 8, Err::ChecksumMismatch,
          path.string() + ": file truncated");
  const size_t body_len = bytes.size() - 8;
  uint64_t stored = 0;
  std::memcpy(&stored, bytes.data() + body_len, 8);
  const uint64_t computed =
      fnv1a64({reinterpret_cast<const uint8_t*>(bytes.data()), body_len});
  require(stored == computed, Err::ChecksumMismatch,
          path.string() + ": checksum mismatch");

  require(std::memcmp(bytes.data(), kMagic, 4) == 0, Err::VersionMismatch,
          path.string() + ": not a KGRT checkpoint");
  uint16_t version = 0;
  std::memcpy(&version, bytes.data() + 4, 2);
  require(version == kVersion, Err::VersionMismatch,
          path.string() + ": unsupported format version " +
              std::to_string(version));
  uint32_t header_len = 0;
  std::memcpy(&header_len, bytes.data() + 6, 4);
  require(10 + size_t(header_len) <= body_len, Err::ChecksumMismatch,
          path.string() + ": header overruns file");

  json header = json::parse(bytes.substr(10, header_len), nullptr, false);
  require(!header.is_discarded(), Err::ParseError,
          path.string() + ": invalid header JSON");

  Checkpoint cp;
  cp.config = config_from_json(header.at("config").dump());
  cp.step = header.at("step").get<uint64_t>();
  cp.history = history_from_json(header.at("history"));
  cp.best_mrr = header.at("best_mrr").get<double>();
  cp.best_step = header.at("best_step").get<int64_t>();
  auto rng = header.at("rng_state");
  require(rng.is_array() && rng.size() == 4, Err::ParseError,
          "rng_state must have 4 words");
  for (size_t i = 0; i < 4; ++i) cp.rng_state[i] = rng[i].get<uint64_t>();

  cp.table.model = cp.config.model;
  cp.table.k = cp.config.k;
  cp.table.modulus_c = cp.config.modulus_c;
  cp.table.num_entities = header.at("num_entities").get<size_t>();
  cp.table.num_relations = header.at("num_relations").get<size_t>();
  cp.opt.cfg = AdamConfig{};
  cp.opt.step = header.at("adam_step").get<uint64_t>();

  std::unordered_map<std::string, std::vector<double>*> targets{
      {"entity", &cp.table.entity},
      {"relation", &cp.table.relation},
      {"adam_m_entity", &cp.opt.m_entity},
      {"adam_v_entity", &cp.opt.v_entity},
      {"adam_m_relation", &cp.opt.m_relation},
      {"adam_v_relation", &cp.opt.v_relation},
  };
  EmbeddingTable best;
  bool has_best = false;
  best.model = cp.table.model;
  best.k = cp.table.k;
  best.modulus_c = cp.table.modulus_c;
  best.num_entities = cp.table.num_entities;
  best.num_relations = cp.table.num_relations;
  targets.emplace("best_entity", &best.entity);
  targets.emplace("best_relation", &best.relation);

  size_t offset = 10 + header_len;
  for (const auto& a : header.at("arrays")) {
    const std::string name = a.at("name").get<std::string>();
    const size_t len = a.at("len").get<size_t>();
    auto it = targets.find(name);
    require(it != targets.end(), Err::VersionMismatch,
            "unknown array '" + name + "'");
    require(offset + len * sizeof(double) <= body_len, Err::ChecksumMismatch,
            "array '" + name + "' overruns file");
    it->second->resize(len);
    std::memcpy(it->second->data(), bytes.data() + offset,
                len * sizeof(double));
    offset += len * sizeof(double);
    if (name == "best_entity" || name == "best_relation") has_best = true;
  }
  require(offset == body_len, Err::ChecksumMismatch,
          "trailing bytes after declared arrays");

  const size_t expect_entity = cp.table.num_entities * cp.table.entity_width();
  const size_t expect_relation =
      cp.table.num_relations * cp.table.relation_width();
  require(cp.table.entity.size() == expect_entity &&
              cp.table.relation.size() == expect_relation,
          Err::VersionMismatch, "array shapes disagree with config");
  if (has_best) {
    require(best.entity.size() == expect_entity &&
                best.relation.size() == expect_relation,
            Err::VersionMismatch, "best-table shapes disagree with config");
    cp.best_table = std::move(best);
  }
  if (cp.opt.m_entity.empty()) cp.opt = OptimizerState::like(cp.table);
  return cp;
}

void check_compatible(const Checkpoint& cp, const TrainConfig& cfg) {
  require(cp.config.model == cfg.model, Err::VersionMismatch,
          "checkpoint model kind differs from config");
  require(cp.config.k == cfg.k, Err::VersionMismatch,
          "checkpoint k=" + std::to_string(cp.config.k) +
              " differs from config k=" + std::to_string(cfg.k));
}

}  // namespace kge
