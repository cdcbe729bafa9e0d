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

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "ibepair/entropy.hpp"
#include "ibepair/pairing.hpp"

namespace ibepair {

// BasicIdent identity-based encryption: setup / extract / encrypt / decrypt,
// plus a CEK hybrid envelope for bulk payloads.
//
// Security level is chosen-plaintext only, exactly as the base scheme
// defines it; the hybrid envelope's MAC gives integrity for bulk mode but
// does not upgrade the IBE layer to CCA. No constant-time guarantees —
// research prototype.

struct SetupProfile {
  unsigned qbits = 160;
  unsigned pbits = 512;
  unsigned n_bits = 256;  // mask length; must be a multiple of 8, <= 256
};

// Public parameter set {p, q, n, P, Pu_PKG, H1, H2}. Immutable, shareable.
class SystemParams {
 public:
  SystemParams(PairingContext ctx, unsigned n_bits, FpPoint generator, FpPoint pu_pkg);

  const PairingContext& pairing() const { return ctx_; }
  const CurveParams& curve() const { return ctx_.params(); }
  const PrimeFieldPtr& field() const { return ctx_.field(); }
  const mpz_class& p() const { return ctx_.field()->modulus(); }
  const mpz_class& q() const { return ctx_.group_order(); }
  unsigned n_bits() const { return n_bits_; }
  std::size_t n_bytes() const { return n_bits_ / 8; }
  const FpPoint& generator() const { return gen_; }
  const FpPoint& pu_pkg() const { return pu_pkg_; }

  // Hash-config identifiers fixed by the v1 format.
  static constexpr std::string_view kH1Id = "BF-H1/SHA-256";
  static constexpr std::string_view kH2Id = "BF-H2/SHA-256";

 private:
  PairingContext ctx_;
  unsigned n_bits_;
  FpPoint gen_;
  FpPoint pu_pkg_;
};

// The PKG's secret scalar s in [1, q-1]; s*P = Pu_PKG.
struct MasterKey {
  mpz_class s;
};

// An identity with its derived public point and, after extraction, the
// private point Pr = s*Pu. `counter` is the hash-to-point retry index.
struct IdentityKeys {
  std::string id;
  std::uint8_t counter = 0;
  FpPoint pu;
  std::optional<FpPoint> pr;
};

// BasicIdent ciphertext (U, V) = (rP, M xor H1(g_ID^r)).
struct Ciphertext {
  FpPoint u;
  Bytes v;  // exactly n bits

  Bytes to_bytes() const;
  static Ciphertext from_bytes(ByteView data, const SystemParams& params);
};

// CEK envelope: IBE-encrypted content key, then AES-256-CTR body with an
// HMAC-SHA256 tag over nonce || body.
struct HybridCiphertext {
  Ciphertext cek_ct;
  Bytes nonce;  // 16 bytes
  Bytes body;
  Bytes tag;  // 32 bytes

  Bytes to_bytes() const;
  static HybridCiphertext from_bytes(ByteView data, const SystemParams& params);
};

// H1: G2 -> {0,1}^n, as SHA-256("BF-H1" || canonical Fp2 bytes) truncated.
Bytes h1(const GtElement& g, unsigned n_bits);

// H2: {0,1}* -> F_p. Counter-mode SHA-256 over "BF-H2" || counter || id,
// expanded past the field width before reduction to keep the modulo bias
// negligible.
FpElement h2(const PrimeFieldPtr& field, std::uint8_t counter, ByteView id);

// Generates q (Solinas), p = 12qr - 1, a generator of order q, and the
// master scalar. Deterministic given a seeded source.
std::pair<SystemParams, MasterKey> setup(const SetupProfile& profile, EntropySource& rng);

// Builds params from hand-set components (toy vectors, file loading);
// validates every constraint the generated path guarantees.
SystemParams make_system_params(const mpz_class& p, const mpz_class& q, unsigned n_bits,
                                const FpPoint& generator, const FpPoint& pu_pkg);

// Public-key derivation from the identity alone: h2 with a retry counter,
// then map_to_point; anyone can recompute it. Retries are bounded at 256.
IdentityKeys derive_public_key(const SystemParams& params, std::string_view id);

// PKG-side private-key extraction: Pr = s * Pu. The result always satisfies
// e(Pr, P) = e(Pu, Pu_PKG).
IdentityKeys extract(const SystemParams& params, const MasterKey& master, std::string_view id);

// Checks the key-consistency equation e(Pr, P) = e(Pu, Pu_PKG).
bool verify_identity_keys(const SystemParams& params, const IdentityKeys& keys);

// m must be exactly n bits. r is drawn fresh from rng.
Ciphertext encrypt(const SystemParams& params, std::string_view id, ByteView m,
                   EntropySource& rng);

// M = V xor H1(e(Pr, U)). Requires the private part; validates U.
Bytes decrypt(const SystemParams& params, const IdentityKeys& keys, const Ciphertext& c);

// Bulk encryption under a fresh 256-bit CEK (requires the n = 256 profile).
HybridCiphertext hybrid_encrypt(const SystemParams& params, std::string_view id,
                                ByteView payload, EntropySource& rng);

// Verifies the tag before releasing any plaintext.
Bytes hybrid_decrypt(const SystemParams& params, const IdentityKeys& keys,
                     const HybridCiphertext& hc);

// Direct-mode framing: BE16 length || message || zero padding, one n-bit
// block. Messages longer than n/8 - 2 bytes must use the hybrid path.
Bytes frame_direct_message(ByteView msg, std::size_t block_bytes);
Bytes unframe_direct_message(ByteView block);

// --- parameter/key files (line-based text, lowercase hex) ---

void save_params(const std::filesystem::path& path, const SystemParams& params);
SystemParams load_params(const std::filesystem::path& path);

void save_master_key(const std::filesystem::path& path, const SystemParams& params,
                     const MasterKey& master);
MasterKey load_master_key(const std::filesystem::path& path, const SystemParams& params);

void save_identity_keys(const std::filesystem::path& path, const SystemParams& params,
                        const IdentityKeys& keys);
IdentityKeys load_identity_keys(const std::filesystem::path& path, const SystemParams& params);

// Atomic text/binary file write: temp file in the target directory, rename
// on success.
void write_file_atomic(const std::filesystem::path& path, ByteView data);
Bytes read_file(const std::filesystem::path& path);

}  // namespace ibepair
