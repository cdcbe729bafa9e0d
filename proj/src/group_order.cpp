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

#include "ibepair/group_order.hpp"

#include <vector>

#include "ibepair/errors.hpp"

namespace ibepair {

mpz_class SolinasForm::value() const {
  mpz_class v = 0;
  mpz_setbit(v.get_mpz_t(), a);
  mpz_class mid = 0;
  mpz_setbit(mid.get_mpz_t(), b);
  v += mid_sign * mid;
  v += unit_sign;
  return v;
}

std::string SolinasForm::to_string() const {
  return "2^" + std::to_string(a) + (mid_sign > 0 ? " + " : " - ") + "2^" + std::to_string(b) +
         (unit_sign > 0 ? " + 1" : " - 1");
}

GroupOrder::GroupOrder(mpz_class q) : q_(std::move(q)) {
  if (!is_probable_prime(q_)) throw Error("group order must be prime");
}

GroupOrder::GroupOrder(mpz_class q, SolinasForm form) : q_(std::move(q)), form_(form) {
  if (form.value() != q_) throw Error("Solinas decomposition does not match value");
  if (!is_probable_prime(q_)) throw Error("group order must be prime");
}

unsigned GroupOrder::bit_length() const {
  return static_cast<unsigned>(mpz_sizeinbase(q_.get_mpz_t(), 2));
}

bool is_probable_prime(const mpz_class& n, int rounds) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), rounds) != 0;
}

GroupOrder gen_solinas_prime(unsigned bits, EntropySource& rng) {
  if (bits < 4) throw Error("Solinas search needs bits >= 4");
  // All forms with exactly `bits` bits: 2^bits - 2^b +/- 1 and
  // 2^(bits-1) + 2^b +/- 1, with 0 < b < a.
  std::vector<SolinasForm> candidates;
  for (unsigned b = 1; b < bits; ++b) {
    candidates.push_back({bits, b, -1, +1});
    candidates.push_back({bits, b, -1, -1});
  }
  for (unsigned b = 1; b + 1 < bits; ++b) {
    candidates.push_back({bits - 1, b, +1, +1});
    candidates.push_back({bits - 1, b, +1, -1});
  }
  // Fisher-Yates on the rng stream keeps the pick seed-deterministic.
  for (std::size_t i = candidates.size(); i > 1; --i) {
    mpz_class j = random_below(rng, mpz_class(static_cast<unsigned long>(i)));
    std::swap(candidates[i - 1], candidates[j.get_ui()]);
  }
  std::size_t tried = 0;
  for (const SolinasForm& form : candidates) {
    ++tried;
    mpz_class q = form.value();
    if (mpz_sizeinbase(q.get_mpz_t(), 2) != bits) continue;
    if (is_probable_prime(q)) return GroupOrder(std::move(q), form);
  }
  throw SearchBudgetError("no Solinas prime of " + std::to_string(bits) + " bits found after " +
                          std::to_string(tried) + " candidates");
}

mpz_class gen_system_prime(const GroupOrder& q, unsigned bits, EntropySource& rng) {
  if (bits < q.bit_length() + 12)
    throw Error("system prime needs bits >= |q| + 12");
  // p = 12*q*r - 1 with p of exactly `bits` bits.
  mpz_class lo = 1, hi = 1;
  mpz_mul_2exp(lo.get_mpz_t(), lo.get_mpz_t(), bits - 1);  // 2^(bits-1)
  mpz_mul_2exp(hi.get_mpz_t(), hi.get_mpz_t(), bits);      // 2^bits
  mpz_class base = 12 * q.value();
  mpz_class r_min = (lo + 1 + base - 1) / base;  // ceil((2^(bits-1)+1)/12q)
  mpz_class r_max = (hi - 1 + 1) / base;         // floor(2^bits / 12q)
  if (r_min < 1) r_min = 1;
  if (r_max < r_min) throw SearchBudgetError("empty search range for system prime");
  mpz_class span = r_max - r_min + 1;
  const unsigned budget = 100000;
  for (unsigned tries = 0; tries < budget; ++tries) {
    mpz_class r = r_min + random_below(rng, span);
    if (mpz_divisible_p(r.get_mpz_t(), q.value().get_mpz_t())) continue;  // keep q^2 out of p+1
    mpz_class p = base * r - 1;
    if (is_probable_prime(p)) return p;
  }
  throw SearchBudgetError("no system prime of " + std::to_string(bits) + " bits found within " +
                          std::to_string(budget) + " candidates");
}

void validate_system_prime(const mpz_class& p, const mpz_class& q) {
  if (!is_probable_prime(p)) throw Error("p is not prime");
  if (!is_probable_prime(q)) throw Error("q is not prime");
  if (mpz_fdiv_ui(p.get_mpz_t(), 12) != 11) throw Error("p must be 11 (mod 12)");
  mpz_class group = p + 1;
  if (!mpz_divisible_p(group.get_mpz_t(), q.get_mpz_t()))
    throw Error("q must divide p + 1");
  mpz_class q2 = q * q;
  if (mpz_divisible_p(group.get_mpz_t(), q2.get_mpz_t()))
    throw Error("q^2 must not divide p + 1");
}

}  // namespace ibepair
