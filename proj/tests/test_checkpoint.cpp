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
#include <doctest.h>

#include <cstring>
#include <fstream>

#include "kge/checkpoint.hpp"
#include "kge/synthetic.hpp"
#include "support/helpers.hpp"

using namespace kge;
using namespace kge::test;

namespace {

Checkpoint trained_checkpoint(uint64_t seed) {
  auto g = make_random_graph(15, 2, 50, 6, 6, 31);
  TrainConfig cfg;
  cfg.model = ModelKind::RotatE;
  cfg.k = 6;
  cfg.batch_size = 8;
  cfg.negatives = 2;
  cfg.gamma = 3.0;
  cfg.lr = 1e-2;
  cfg.max_steps = 30;
  cfg.valid_every = 10;
  cfg.seed = seed;
  return train(g, cfg);
}

}  // namespace

TEST_CASE("checkpoint: round trip reproduces forward scores bit for bit") {
  auto cp = trained_checkpoint(3);
  TempDir tmp("ckpt");
  auto path = tmp.path() / "model.kgrt";
  save_checkpoint(cp, path);
  auto loaded = load_checkpoint(path);

  CHECK(loaded.table.entity == cp.table.entity);
  CHECK(loaded.table.relation == cp.table.relation);
  CHECK(loaded.opt.m_entity == cp.opt.m_entity);
  CHECK(loaded.opt.v_relation == cp.opt.v_relation);
  CHECK(loaded.opt.step == cp.opt.step);
  CHECK(loaded.rng_state == cp.rng_state);
  CHECK(loaded.step == cp.step);
  CHECK(loaded.history.size() == cp.history.size());
  CHECK(loaded.best_table.has_value() == cp.best_table.has_value());

  Triple probe{1, 0, 4};
  CHECK(score(loaded.table, probe) == score(cp.table, probe));  // exact
  CHECK(score(loaded.eval_table(), probe) == score(cp.eval_table(), probe));
}

TEST_CASE("checkpoint: truncation is caught by the checksum") {
  auto cp = trained_checkpoint(4);
  TempDir tmp("trunc");
  auto path = tmp.path() / "model.kgrt";
  save_checkpoint(cp, path);
  auto size = std::filesystem::file_size(path);
  std::filesystem::resize_file(path, size - 5);
  try {
    load_checkpoint(path);
    FAIL("expected ChecksumMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == Err::ChecksumMismatch);
  }
}

TEST_CASE("checkpoint: a flipped payload byte is caught by the checksum") {
  auto cp = trained_checkpoint(5);
  TempDir tmp("flip");
  auto path = tmp.path() / "model.kgrt";
  save_checkpoint(cp, path);
  {
    std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(64);
    char b = 0;
    f.read(&b, 1);
    f.seekp(64);
    b = char(b ^ 0x40);
    f.write(&b, 1);
  }
  try {
    load_checkpoint(path);
    FAIL("expected ChecksumMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == Err::ChecksumMismatch);
  }
}

TEST_CASE("checkpoint: dimension disagreement is a version mismatch") {
  auto cp = trained_checkpoint(6);
  TempDir tmp("dims");
  auto path = tmp.path() / "model.kgrt";
  save_checkpoint(cp, path);
  auto loaded = load_checkpoint(path);
  TrainConfig other = loaded.config;
  other.k = loaded.config.k * 2;
  try {
    check_compatible(loaded, other);
    FAIL("expected VersionMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == Err::VersionMismatch);
  }
  check_compatible(loaded, loaded.config);  // same shapes pass
}

TEST_CASE("checkpoint: missing file is an io error") {
  try {
    load_checkpoint("/nonexistent/path/model.kgrt");
    FAIL("expected IoError");
  } catch (const Error& e) {
    CHECK(e.code() == Err::IoError);
  }
}

TEST_CASE("fnv1a64 reference values") {
  // published test vectors for 64-bit FNV-1a
  auto hash_str = [](const char* s) {
    return fnv1a64({reinterpret_cast<const uint8_t*>(s), strlen(s)});
  };
  CHECK(fnv1a64({}) == 14695981039346656037ULL);
  CHECK(hash_str("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(hash_str("foobar") == 0x85944171f73967e8ULL);
}
