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

#include <cstdint>
#include <string>
#include <vector>

#include "ibepair/ibe.hpp"

namespace ibepair {

struct BenchStats {
  std::uint64_t min_ns = 0;
  std::uint64_t median_ns = 0;
  double mean_ns = 0.0;
};

// Timings for the pairing variants and the IBE round trip. Absolute numbers
// are hardware-dependent and only orderings are meaningful; callers must
// check `correctness_gate` (all variants agreed on every input) before
// trusting any timing.
struct PairingBenchReport {
  unsigned pbits = 0;
  unsigned qbits = 0;
  unsigned iters = 0;
  bool correctness_gate = false;
  BenchStats affine;
  BenchStats projective;
  BenchStats precomputed;
  BenchStats ibe_encrypt;
  BenchStats ibe_decrypt;
};

// Runs `iters` evaluations per mode over rng-drawn subgroup points (fixed
// first argument, as the precomputed variant requires). The master key is
// needed to extract the private key that the decrypt timing uses.
PairingBenchReport run_pairing_bench(const SystemParams& params, const MasterKey& master,
                                     unsigned iters, EntropySource& rng);

BenchStats summarize_ns(std::vector<std::uint64_t> samples);

}  // namespace ibepair
