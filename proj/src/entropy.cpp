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

#include "ibepair/entropy.hpp"

#include <random>

#include "ibepair/errors.hpp"
#include "ibepair/hashes.hpp"

namespace ibepair {

Bytes EntropySource::bytes(std::size_t n) {
  Bytes out(n);
  fill(out);
  return out;
}

void SystemEntropySource::fill(std::span<std::uint8_t> out) {
  static thread_local std::random_device dev;
  std::size_t i = 0;
  while (i < out.size()) {
    unsigned int word = dev();
    for (std::size_t k = 0; k < sizeof(word) && i < out.size(); ++k, ++i)
      out[i] = static_cast<std::uint8_t>(word >> (8 * k));
  }
}

SeededEntropySource::SeededEntropySource(Bytes seed) : seed_(std::move(seed)) {}

void SeededEntropySource::fill(std::span<std::uint8_t> out) {
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (pos_ == block_.size()) {
      Bytes counter;
      append_u64_be(counter, counter_++);
      block_ = sha256_concat({as_view(seed_), as_view(counter)});
      pos_ = 0;
    }
    out[i] = block_[pos_++];
  }
}

FixedEntropySource::FixedEntropySource(Bytes data) : data_(std::move(data)) {}

void FixedEntropySource::fill(std::span<std::uint8_t> out) {
  if (pos_ + out.size() > data_.size())
    throw EntropyError("fixed entropy source exhausted");
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = data_[pos_++];
}

mpz_class random_below(EntropySource& src, const mpz_class& bound) {
  if (bound <= 0) throw Error("random_below requires a positive bound");
  if (bound == 1) return 0;
  mpz_class max = bound - 1;
  const std::size_t bits = mpz_sizeinbase(max.get_mpz_t(), 2);
  const std::size_t nbytes = (bits + 7) / 8;
  const unsigned top_bits = bits % 8;
  Bytes buf(nbytes);
  while (true) {
    src.fill(buf);
    if (top_bits != 0) buf[0] &= static_cast<std::uint8_t>((1u << top_bits) - 1);
    mpz_class v;
    mpz_import(v.get_mpz_t(), buf.size(), 1, 1, 1, 0, buf.data());
    if (v < bound) return v;
  }
}

mpz_class random_scalar(EntropySource& src, const mpz_class& q) {
  if (q < 2) throw Error("random_scalar requires q >= 2");
  mpz_class upper = q - 1;
  return random_below(src, upper) + 1;
}

}  // namespace ibepair
