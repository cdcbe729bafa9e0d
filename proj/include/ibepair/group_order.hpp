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

#include <optional>
#include <string>

#include "ibepair/entropy.hpp"

namespace ibepair {

// q = 2^a + mid_sign*2^b + unit_sign, with 0 < b < a. Low Hamming weight
// keeps pairing loops short.
struct SolinasForm {
  unsigned a = 0;
  unsigned b = 0;
  int mid_sign = 1;   // +1 or -1
  int unit_sign = 1;  // +1 or -1

  mpz_class value() const;
  std::string to_string() const;
};

// The prime order q of the pairing groups, with its Solinas decomposition
// when it was generated in that shape.
class GroupOrder {
 public:
  explicit GroupOrder(mpz_class q);
  GroupOrder(mpz_class q, SolinasForm form);

  const mpz_class& value() const { return q_; }
  const std::optional<SolinasForm>& solinas_form() const { return form_; }
  unsigned bit_length() const;

 private:
  mpz_class q_;
  std::optional<SolinasForm> form_;
};

// Probabilistic primality with error below 2^-128 (>= 64 Miller-Rabin
// rounds on top of GMP's trial-division prefilter).
bool is_probable_prime(const mpz_class& n, int rounds = 64);

// Searches the 2^a +/- 2^b +/- 1 candidates of exactly `bits` bits in an
// rng-shuffled order and returns the first prime. Throws SearchBudgetError
// (reporting how many candidates were tried) if none is prime.
GroupOrder gen_solinas_prime(unsigned bits, EntropySource& rng);

// Searches for a prime p = 12*q*r - 1 of exactly `bits` bits, which gives
// p = 11 (mod 12) and q | p+1 by construction; r is additionally kept
// coprime to q so that q^2 does not divide p+1. Requires bits >= |q| + 12.
mpz_class gen_system_prime(const GroupOrder& q, unsigned bits, EntropySource& rng);

// Checks the constraints rather than the construction: p and q prime,
// p = 11 (mod 12), q | p+1, q^2 does not divide p+1. Hand-set toy
// parameters that satisfy these are accepted. Throws Error on violation.
void validate_system_prime(const mpz_class& p, const mpz_class& q);

}  // namespace ibepair
