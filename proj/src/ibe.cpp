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

#include "ibepair/ibe.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "ibepair/hashes.hpp"

namespace ibepair {

namespace {

Bytes xor_bytes(ByteView a, ByteView b) {
  if (a.size() != b.size()) throw Error("XOR operands differ in length");
  Bytes out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] ^ b[i];
  return out;
}

void validate_n_bits(unsigned n_bits) {
  if (n_bits == 0 || n_bits % 8 != 0 || n_bits > 256)
    throw Error("mask length n must be a positive multiple of 8, at most 256");
}

constexpr std::size_t kNonceLen = 16;
constexpr std::size_t kTagLen = 32;
constexpr std::size_t kCekLen = 32;

}  // namespace

SystemParams::SystemParams(PairingContext ctx, unsigned n_bits, FpPoint generator, FpPoint pu_pkg)
    : ctx_(std::move(ctx)), n_bits_(n_bits), gen_(std::move(generator)), pu_pkg_(std::move(pu_pkg)) {
  validate_n_bits(n_bits_);
  const mpz_class& q = ctx_.group_order();
  if (gen_.is_infinity() || !is_on_curve(gen_) || !scalar_mul_fast(q, gen_).is_infinity())
    throw Error("generator must be a curve point of order q");
  if (pu_pkg_.is_infinity() || !is_on_curve(pu_pkg_) ||
      !scalar_mul_fast(q, pu_pkg_).is_infinity())
    throw Error("Pu_PKG must be a curve point of order q");
}

Bytes h1(const GtElement& g, unsigned n_bits) {
  validate_n_bits(n_bits);
  Bytes digest = sha256_concat({as_view(std::string_view("BF-H1")), as_view(g.to_bytes())});
  digest.resize(n_bits / 8);
  return digest;
}

FpElement h2(const PrimeFieldPtr& field, std::uint8_t counter, ByteView id) {
  Bytes input;
  input.push_back(counter);
  append(input, id);
  // expand past the field width so the reduction bias stays negligible
  Bytes stream = hash_stream("BF-H2", input, field->byte_length() + 16);
  mpz_class v;
  mpz_import(v.get_mpz_t(), stream.size(), 1, 1, 1, 0, stream.data());
  return field->element(v);
}

std::pair<SystemParams, MasterKey> setup(const SetupProfile& profile, EntropySource& rng) {
  validate_n_bits(profile.n_bits);
  GroupOrder q = gen_solinas_prime(profile.qbits, rng);
  mpz_class p = gen_system_prime(q, profile.pbits, rng);
  CurveParams curve = CurveParams::create(p, std::move(q));
  PairingContext ctx = PairingContext::create(std::move(curve));
  FpPoint generator = ctx.params().random_generator(rng);
  mpz_class s = random_scalar(rng, ctx.group_order());
  FpPoint pu_pkg = scalar_mul_fast(s, generator);
  SystemParams params(std::move(ctx), profile.n_bits, std::move(generator), std::move(pu_pkg));
  return {std::move(params), MasterKey{std::move(s)}};
}

SystemParams make_system_params(const mpz_class& p, const mpz_class& q, unsigned n_bits,
                                const FpPoint& generator, const FpPoint& pu_pkg) {
  CurveParams curve = CurveParams::create(p, GroupOrder(q));
  PairingContext ctx = PairingContext::create(std::move(curve));
  return SystemParams(std::move(ctx), n_bits, generator, pu_pkg);
}

IdentityKeys derive_public_key(const SystemParams& params, std::string_view id) {
  if (id.empty()) throw Error("identity must be non-empty");
  for (unsigned counter = 0; counter < 256; ++counter) {
    FpElement y0 = h2(params.field(), static_cast<std::uint8_t>(counter), as_view(id));
    try {
      FpPoint pu = params.curve().map_to_point(y0);
      return IdentityKeys{std::string(id), static_cast<std::uint8_t>(counter), std::move(pu),
                          std::nullopt};
    } catch (const DegeneratePointError&) {
      continue;
    }
  }
  throw Error("no usable public key for identity within 256 hash retries");
}

IdentityKeys extract(const SystemParams& params, const MasterKey& master, std::string_view id) {
  IdentityKeys keys = derive_public_key(params, id);
  keys.pr = scalar_mul_fast(master.s, keys.pu);
  return keys;
}

bool verify_identity_keys(const SystemParams& params, const IdentityKeys& keys) {
  if (!keys.pr) return false;
  GtElement lhs = tate_pairing(*keys.pr, params.generator(), params.pairing());
  GtElement rhs = tate_pairing(keys.pu, params.pu_pkg(), params.pairing());
  return lhs == rhs;
}

Ciphertext encrypt(const SystemParams& params, std::string_view id, ByteView m,
                   EntropySource& rng) {
  if (m.size() != params.n_bytes())
    throw Error("direct-mode message must be exactly " + std::to_string(params.n_bits()) +
                " bits");
  IdentityKeys pub = derive_public_key(params, id);
  mpz_class r = random_scalar(rng, params.q());
  FpPoint u = scalar_mul_fast(r, params.generator());
  GtElement g_id = tate_pairing(pub.pu, params.pu_pkg(), params.pairing());
  Bytes mask = h1(g_id.pow(r), params.n_bits());
  return Ciphertext{std::move(u), xor_bytes(m, mask)};
}

Bytes decrypt(const SystemParams& params, const IdentityKeys& keys, const Ciphertext& c) {
  if (!keys.pr) throw Error("decryption requires the private key part");
  if (c.v.size() != params.n_bytes()) throw Error("ciphertext mask has wrong length");
  if (!is_on_curve(c.u)) throw NotOnCurveError("ciphertext point U is not on the curve");
  GtElement g = tate_pairing(*keys.pr, c.u, params.pairing());
  return xor_bytes(c.v, h1(g, params.n_bits()));
}

HybridCiphertext hybrid_encrypt(const SystemParams& params, std::string_view id,
                                ByteView payload, EntropySource& rng) {
  if (params.n_bytes() != kCekLen)
    throw Error("hybrid mode requires the n = 256 profile");
  Bytes cek = rng.bytes(kCekLen);
  Ciphertext cek_ct = encrypt(params, id, cek, rng);
  Bytes enc_key = sha256_concat({as_view(std::string_view("IBEPAIR-CEK-ENC")), as_view(cek)});
  Bytes mac_key = sha256_concat({as_view(std::string_view("IBEPAIR-CEK-MAC")), as_view(cek)});
  Bytes nonce = rng.bytes(kNonceLen);
  Bytes body = aes256_ctr(enc_key, nonce, payload);
  Bytes tag = hmac_sha256(mac_key, concat({as_view(nonce), as_view(body)}));
  return HybridCiphertext{std::move(cek_ct), std::move(nonce), std::move(body), std::move(tag)};
}

Bytes hybrid_decrypt(const SystemParams& params, const IdentityKeys& keys,
                     const HybridCiphertext& hc) {
  if (hc.nonce.size() != kNonceLen || hc.tag.size() != kTagLen)
    throw ParseError("hybrid envelope has malformed nonce or tag");
  Bytes cek = decrypt(params, keys, hc.cek_ct);
  Bytes enc_key = sha256_concat({as_view(std::string_view("IBEPAIR-CEK-ENC")), as_view(cek)});
  Bytes mac_key = sha256_concat({as_view(std::string_view("IBEPAIR-CEK-MAC")), as_view(cek)});
  Bytes expected = hmac_sha256(mac_key, concat({as_view(hc.nonce), as_view(hc.body)}));
  // authenticate before touching the body
  if (!ct_equal(expected, hc.tag)) throw AuthenticationError("hybrid envelope tag mismatch");
  return aes256_ctr(enc_key, hc.nonce, hc.body);
}

Bytes frame_direct_message(ByteView msg, std::size_t block_bytes) {
  if (block_bytes < 3) throw Error("direct-mode block too small to frame");
  if (msg.size() > block_bytes - 2)
    throw OversizeError("message exceeds " + std::to_string(block_bytes - 2) +
                        " bytes; use hybrid/bulk mode");
  Bytes out;
  append_u16_be(out, static_cast<std::uint16_t>(msg.size()));
  append(out, msg);
  out.resize(block_bytes, 0);
  return out;
}

Bytes unframe_direct_message(ByteView block) {
  if (block.size() < 2) throw ParseError("framed block too short", block.size());
  std::uint16_t len = read_u16_be(block, 0);
  if (len > block.size() - 2) throw ParseError("framed length exceeds block", 0);
  for (std::size_t i = 2 + len; i < block.size(); ++i)
    if (block[i] != 0) throw ParseError("nonzero padding in framed block", i);
  return Bytes(block.begin() + 2, block.begin() + 2 + len);
}

// --- serialization ---

Bytes Ciphertext::to_bytes() const {
  Bytes out = serialize_point(u);
  append(out, v);
  return out;
}

namespace {

// Reads one point encoding from the front of `data` and advances `offset`.
FpPoint read_point(ByteView data, std::size_t& offset, const SystemParams& params) {
  if (offset >= data.size()) throw ParseError("truncated point", offset);
  std::size_t len = data[offset] == 0x00 ? 1 : 1 + 2 * params.field()->byte_length();
  if (offset + len > data.size()) throw ParseError("truncated point", data.size());
  FpPoint p = parse_fp_point(data.subspan(offset, len), params.field());
  offset += len;
  return p;
}

}  // namespace

Ciphertext Ciphertext::from_bytes(ByteView data, const SystemParams& params) {
  std::size_t offset = 0;
  FpPoint u = read_point(data, offset, params);
  if (data.size() - offset != params.n_bytes())
    throw ParseError("ciphertext mask has wrong length", offset);
  return Ciphertext{std::move(u), Bytes(data.begin() + offset, data.end())};
}

Bytes HybridCiphertext::to_bytes() const {
  Bytes out = cek_ct.to_bytes();
  append(out, nonce);
  append_u64_be(out, body.size());
  append(out, body);
  append(out, tag);
  return out;
}

HybridCiphertext HybridCiphertext::from_bytes(ByteView data, const SystemParams& params) {
  std::size_t offset = 0;
  FpPoint u = read_point(data, offset, params);
  if (data.size() < offset + params.n_bytes()) throw ParseError("truncated CEK mask", offset);
  Bytes v(data.begin() + offset, data.begin() + offset + params.n_bytes());
  offset += params.n_bytes();
  if (data.size() < offset + kNonceLen + 8) throw ParseError("truncated envelope header", offset);
  Bytes nonce(data.begin() + offset, data.begin() + offset + kNonceLen);
  offset += kNonceLen;
  std::uint64_t body_len = read_u64_be(data, offset);
  offset += 8;
  if (data.size() != offset + body_len + kTagLen)
    throw ParseError("envelope length mismatch", offset);
  Bytes body(data.begin() + offset, data.begin() + offset + body_len);
  offset += body_len;
  Bytes tag(data.begin() + offset, data.end());
  return HybridCiphertext{Ciphertext{std::move(u), std::move(v)}, std::move(nonce),
                          std::move(body), std::move(tag)};
}

// --- parameter/key files ---

namespace {

std::string mpz_hex(const mpz_class& v) { return v.get_str(16); }

mpz_class hex_mpz(const std::string& s, std::size_t line_no) {
  if (s.empty()) throw ParseError("empty hex value", line_no);
  for (char c : s)
    if (std::string_view("0123456789abcdefABCDEF").find(c) == std::string_view::npos)
      throw ParseError("invalid hex digit in value", line_no);
  return mpz_class(s, 16);
}

struct KvFile {
  std::map<std::string, std::string> values;
  std::map<std::string, std::size_t> lines;
};

KvFile parse_kv_file(const std::string& text, std::string_view expected_header) {
  KvFile out;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1) {
      if (line != expected_header)
        throw ParseError("bad header, expected '" + std::string(expected_header) + "'", line_no);
      saw_header = true;
      continue;
    }
    if (line.empty()) continue;
    std::size_t eq = line.find(" = ");
    if (eq == std::string::npos) throw ParseError("expected 'name = value' line", line_no);
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 3);
    if (out.values.count(key)) throw ParseError("duplicate key '" + key + "'", line_no);
    out.values[key] = value;
    out.lines[key] = line_no;
  }
  if (!saw_header) throw ParseError("empty file", 0);
  return out;
}

const std::string& require_key(const KvFile& kv, const std::string& key) {
  auto it = kv.values.find(key);
  if (it == kv.values.end()) throw ParseError("missing key '" + key + "'", 0);
  return it->second;
}

std::size_t key_line(const KvFile& kv, const std::string& key) {
  auto it = kv.lines.find(key);
  return it == kv.lines.end() ? 0 : it->second;
}

FpPoint parse_point_hex(const KvFile& kv, const std::string& key, const PrimeFieldPtr& field) {
  const std::string& hex = require_key(kv, key);
  try {
    return parse_fp_point(from_hex(hex), field);
  } catch (const ParseError&) {
    throw ParseError("malformed point in '" + key + "'", key_line(kv, key));
  } catch (const NotOnCurveError&) {
    throw ParseError("point in '" + key + "' is not on the curve", key_line(kv, key));
  }
}

}  // namespace

void write_file_atomic(const std::filesystem::path& path, ByteView data) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out.write(reinterpret_cast<const char*>(data.data()),
              static_cast<std::streamsize>(data.size()));
    if (!out) {
      out.close();
      std::filesystem::remove(tmp);
      throw Error("write failed for " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

Bytes read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string s = buf.str();
  return Bytes(s.begin(), s.end());
}

void save_params(const std::filesystem::path& path, const SystemParams& params) {
  std::ostringstream out;
  out << "ibepair-params v1\n";
  out << "p = " << mpz_hex(params.p()) << "\n";
  out << "q = " << mpz_hex(params.q()) << "\n";
  out << "n = " << mpz_hex(mpz_class(params.n_bits())) << "\n";
  out << "P = " << to_hex(serialize_point(params.generator())) << "\n";
  out << "pupkg = " << to_hex(serialize_point(params.pu_pkg())) << "\n";
  std::string s = out.str();
  write_file_atomic(path, as_view(s));
}

SystemParams load_params(const std::filesystem::path& path) {
  Bytes raw = read_file(path);
  KvFile kv = parse_kv_file(std::string(raw.begin(), raw.end()), "ibepair-params v1");
  mpz_class p = hex_mpz(require_key(kv, "p"), key_line(kv, "p"));
  mpz_class q = hex_mpz(require_key(kv, "q"), key_line(kv, "q"));
  mpz_class n = hex_mpz(require_key(kv, "n"), key_line(kv, "n"));
  if (n < 8 || n > 256) throw ParseError("mask length out of range", key_line(kv, "n"));
  // points need the field, which needs p validated first
  CurveParams curve = CurveParams::create(p, GroupOrder(q));
  FpPoint generator = parse_point_hex(kv, "P", curve.field());
  FpPoint pu_pkg = parse_point_hex(kv, "pupkg", curve.field());
  PairingContext ctx = PairingContext::create(std::move(curve));
  return SystemParams(std::move(ctx), static_cast<unsigned>(n.get_ui()), std::move(generator),
                      std::move(pu_pkg));
}

void save_master_key(const std::filesystem::path& path, const SystemParams& params,
                     const MasterKey& master) {
  std::ostringstream out;
  out << "ibepair-master v1\n";
  out << "p = " << mpz_hex(params.p()) << "\n";
  out << "q = " << mpz_hex(params.q()) << "\n";
  out << "s = " << mpz_hex(master.s) << "\n";
  std::string s = out.str();
  write_file_atomic(path, as_view(s));
}

MasterKey load_master_key(const std::filesystem::path& path, const SystemParams& params) {
  Bytes raw = read_file(path);
  KvFile kv = parse_kv_file(std::string(raw.begin(), raw.end()), "ibepair-master v1");
  mpz_class p = hex_mpz(require_key(kv, "p"), key_line(kv, "p"));
  mpz_class q = hex_mpz(require_key(kv, "q"), key_line(kv, "q"));
  mpz_class s = hex_mpz(require_key(kv, "s"), key_line(kv, "s"));
  if (p != params.p() || q != params.q())
    throw ParseError("master key belongs to a different parameter set", 2);
  if (s < 1 || s >= params.q()) throw ParseError("master scalar out of range", key_line(kv, "s"));
  return MasterKey{std::move(s)};
}

void save_identity_keys(const std::filesystem::path& path, const SystemParams& params,
                        const IdentityKeys& keys) {
  (void)params;
  std::ostringstream out;
  out << "ibepair-key v1\n";
  out << "id = " << to_hex(as_view(keys.id)) << "\n";
  out << "counter = " << mpz_hex(mpz_class(keys.counter)) << "\n";
  out << "pu = " << to_hex(serialize_point(keys.pu)) << "\n";
  if (keys.pr) out << "pr = " << to_hex(serialize_point(*keys.pr)) << "\n";
  std::string s = out.str();
  write_file_atomic(path, as_view(s));
}

IdentityKeys load_identity_keys(const std::filesystem::path& path, const SystemParams& params) {
  Bytes raw = read_file(path);
  KvFile kv = parse_kv_file(std::string(raw.begin(), raw.end()), "ibepair-key v1");
  Bytes id_bytes = from_hex(require_key(kv, "id"));
  if (id_bytes.empty()) throw ParseError("empty identity", key_line(kv, "id"));
  mpz_class counter = hex_mpz(require_key(kv, "counter"), key_line(kv, "counter"));
  if (counter > 255) throw ParseError("counter out of range", key_line(kv, "counter"));
  IdentityKeys keys{std::string(id_bytes.begin(), id_bytes.end()),
                    static_cast<std::uint8_t>(counter.get_ui()),
                    parse_point_hex(kv, "pu", params.field()), std::nullopt};
  if (kv.values.count("pr")) keys.pr = parse_point_hex(kv, "pr", params.field());
  if (!scalar_mul_fast(params.q(), keys.pu).is_infinity())
    throw ParseError("public point is not in the order-q subgroup", key_line(kv, "pu"));
  return keys;
}

}  // namespace ibepair
