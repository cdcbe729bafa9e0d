// Copyright 2026 The ibepair Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <span>

#include "ibepair/bytes.hpp"

namespace ibepair {

// Injectable randomness. Every random choice in the library flows through one
// of these, so a seeded source makes whole runs bit-reproducible. Sources are
// stateful and not thread-safe; give each logical actor its own.
class EntropySource {
 public:
  virtual ~EntropySource() = default;
  virtual void fill(std::span<std::uint8_t> out) = 0;
  Bytes bytes(std::size_t n);
};

// Operating-system randomness.
class SystemEntropySource final : public EntropySource {
 public:
  void fill(std::span<std::uint8_t> out) override;
};

// Deterministic stream: block i is SHA-256(seed || BE64(i)). Stands in for the
// sensor-conditioning randomness of real devices; also the test/CLI seed path.
class SeededEntropySource final : public EntropySource {
 public:
  explicit SeededEntropySource(Bytes seed);
  void fill(std::span<std::uint8_t> out) override;

 private:
  Bytes seed_;
  Bytes block_;
  std::uint64_t counter_ = 0;
  std::size_t pos_ = 0;
};

// Replays a fixed byte vector; throws EntropyError once exhausted.
class FixedEntropySource final : public EntropySource {
 public:
  explicit FixedEntropySource(Bytes data);
  void fill(std::span<std::uint8_t> out) override;

 private:
  Bytes data_;
  std::size_t pos_ = 0;
};

// Uniform integer in [0, bound) by rejection sampling. The draw procedure
// (mask the top byte of ceil(bits/8) bytes, big-endian, reject >= bound) is
// part of the deterministic contract; golden files depend on it.
mpz_class random_below(EntropySource& src, const mpz_class& bound);

// Uniform integer in [1, q-1].
mpz_class random_scalar(EntropySource& src, const mpz_class& q);

}  // namespace ibepair
