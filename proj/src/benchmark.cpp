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

#include "ibepair/benchmark.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

namespace ibepair {

namespace {

using Clock = std::chrono::steady_clock;

template <typename Fn>
std::uint64_t time_ns(Fn&& fn) {
  auto start = Clock::now();
  fn();
  auto stop = Clock::now();
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count());
}

}  // namespace

BenchStats summarize_ns(std::vector<std::uint64_t> samples) {
  BenchStats stats;
  if (samples.empty()) return stats;
  std::sort(samples.begin(), samples.end());
  stats.min_ns = samples.front();
  stats.median_ns = samples[samples.size() / 2];
  stats.mean_ns = static_cast<double>(std::accumulate(samples.begin(), samples.end(),
                                                      std::uint64_t{0})) /
                  static_cast<double>(samples.size());
  return stats;
}

PairingBenchReport run_pairing_bench(const SystemParams& params, const MasterKey& master,
                                     unsigned iters, EntropySource& rng) {
  if (iters < 10) throw Error("benchmark needs iters >= 10");
  PairingBenchReport report;
  report.pbits = static_cast<unsigned>(params.field()->bit_length());
  report.qbits = params.curve().order().bit_length();
  report.iters = iters;

  const PairingContext& ctx = params.pairing();
  const FpPoint& base = params.generator();
  PrecomputedPairing pre = precompute(base, ctx);

  std::vector<FpPoint> points;
  points.reserve(iters);
  for (unsigned i = 0; i < iters; ++i)
    points.push_back(scalar_mul_fast(random_scalar(rng, params.q()), base));

  // correctness gate: every variant must agree on every input before any
  // timing is trusted
  report.correctness_gate = true;
  for (const FpPoint& q : points) {
    GtElement a = tate_pairing(base, q, ctx, MillerVariant::Affine);
    GtElement j = tate_pairing(base, q, ctx, MillerVariant::Jacobian);
    GtElement p = apply_precomputed(pre, q, ctx);
    if (a != j || a != p) {
      report.correctness_gate = false;
      return report;
    }
  }

  std::vector<std::uint64_t> affine_ns, projective_ns, precomp_ns, enc_ns, dec_ns;
  for (const FpPoint& q : points) {
    affine_ns.push_back(
        time_ns([&] { (void)tate_pairing(base, q, ctx, MillerVariant::Affine); }));
    projective_ns.push_back(
        time_ns([&] { (void)tate_pairing(base, q, ctx, MillerVariant::Jacobian); }));
    precomp_ns.push_back(time_ns([&] { (void)apply_precomputed(pre, q, ctx); }));
  }
  report.affine = summarize_ns(std::move(affine_ns));
  report.projective = summarize_ns(std::move(projective_ns));
  report.precomputed = summarize_ns(std::move(precomp_ns));

  const std::string id = "bench@example";
  IdentityKeys keys = extract(params, master, id);
  for (unsigned i = 0; i < iters; ++i) {
    Bytes m = rng.bytes(params.n_bytes());
    Ciphertext ct = encrypt(params, id, m, rng);
    enc_ns.push_back(time_ns([&] { ct = encrypt(params, id, m, rng); }));
    dec_ns.push_back(time_ns([&] { (void)decrypt(params, keys, ct); }));
  }
  report.ibe_encrypt = summarize_ns(std::move(enc_ns));
  report.ibe_decrypt = summarize_ns(std::move(dec_ns));
  return report;
}

}  // namespace ibepair
