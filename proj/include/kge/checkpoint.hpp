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

#include <cstdint>
#include <filesystem>
#include <span>

#include "kge/train.hpp"

namespace kge {

// File layout: magic "KGRT", u16 LE format version, u32 LE header length,
// UTF-8 JSON header (config, array shapes in order, optimizer step, rng
// state, metric history, checksum algorithm id), raw little-endian IEEE-754
// f64 arrays in header-declared order, trailing u64 LE FNV-1a checksum over
// all preceding bytes.
void save_checkpoint(const Checkpoint& cp, const std::filesystem::path& path);
Checkpoint load_checkpoint(const std::filesystem::path& path);

// VersionMismatch unless the checkpoint's shape-determining fields (model,
// k, vocabulary sizes implied by the arrays) agree with `cfg`.
void check_compatible(const Checkpoint& cp, const TrainConfig& cfg);

uint64_t fnv1a64(std::span<const uint8_t> bytes,
                 uint64_t seed = 14695981039346656037ULL);

}  // namespace kge
