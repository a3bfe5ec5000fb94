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

#include <stdexcept>
#include <string>

namespace kge {

enum class Err {
  MissingFile,
  UnknownSymbol,
  MalformedLine,
  EmptySplit,
  DimensionMismatch,
  NegativeModulus,
  IdOutOfRange,
  WrongModelKind,
  ExhaustedRetries,
  WeightMismatch,
  ShapeMismatch,
  Divergence,
  IoError,
  VersionMismatch,
  ChecksumMismatch,
  NotACountriesGraph,
  ParseError,
  UnknownKey,
};

const char* err_name(Err e);

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& msg)
      : std::runtime_error(std::string(err_name(code)) + ": " + msg),
        code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& msg) {
  throw Error(code, msg);
}

inline void require(bool cond, Err code, const std::string& msg) {
  if (!cond) fail(code, msg);
}

}  // namespace kge
