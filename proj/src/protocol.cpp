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

#include "ibepair/protocol.hpp"

#include <json.hpp>

#include "ibepair/hashes.hpp"

namespace ibepair {

namespace {

constexpr std::size_t kNonceLen = 16;
constexpr std::size_t kMacLen = 32;

bool known_frame_type(std::uint8_t t) {
  switch (static_cast<FrameType>(t)) {
    case FrameType::ExtractReq:
    case FrameType::ExtractResp:
    case FrameType::PairRecord:
    case FrameType::DirectMsg:
    case FrameType::SessionInit:
    case FrameType::SessionConfirm:
    case FrameType::BulkMsg:
    case FrameType::Error:
      return true;
  }
  return false;
}

Bytes make_error_frame(std::uint8_t code, std::string_view detail) {
  Bytes payload{code};
  append(payload, as_view(detail));
  return encode_frame({FrameType::Error, std::move(payload)});
}

// Raises the peer-reported error as a local exception.
[[noreturn]] void raise_peer_error(const WireFrame& f) {
  std::string detail = f.payload.size() > 1
                           ? std::string(f.payload.begin() + 1, f.payload.end())
                           : std::string("unspecified");
  throw Error("peer reported a protocol error: " + detail);
}

Bytes frame_identity(std::string_view id) {
  Bytes out;
  append_u16_be(out, static_cast<std::uint16_t>(id.size()));
  append(out, as_view(id));
  return out;
}

}  // namespace

// --- wire frame ---

Bytes encode_frame(const WireFrame& f) {
  Bytes out;
  append_u32_be(out, static_cast<std::uint32_t>(f.payload.size() + 1));
  out.push_back(static_cast<std::uint8_t>(f.type));
  append(out, f.payload);
  return out;
}

WireFrame decode_frame(ByteView data) {
  if (data.size() < 5) throw ParseError("frame shorter than its header", data.size());
  std::uint32_t len = read_u32_be(data, 0);
  if (len < 1) throw ParseError("frame length field must cover the type byte", 0);
  if (data.size() != 4 + static_cast<std::size_t>(len))
    throw ParseError("frame length mismatch", 4);
  std::uint8_t type = data[4];
  if (!known_frame_type(type)) throw ParseError("unknown frame type", 4);
  return WireFrame{static_cast<FrameType>(type), Bytes(data.begin() + 5, data.end())};
}

// --- pairing record TLV ---

namespace {
constexpr std::uint8_t kTagName = 0x01;
constexpr std::uint8_t kTagAddress = 0x02;
constexpr std::uint8_t kTagIdentity = 0x03;
constexpr std::uint8_t kTagCapabilities = 0x04;
}  // namespace

Bytes encode_pairing_record(const PairingRecord& r) {
  if (r.identity.empty()) throw Error("pairing record identity must be non-empty");
  Bytes out;
  auto tlv = [&out](std::uint8_t tag, ByteView value) {
    out.push_back(tag);
    append_u16_be(out, static_cast<std::uint16_t>(value.size()));
    append(out, value);
  };
  tlv(kTagName, as_view(r.device_name));
  tlv(kTagAddress, ByteView(r.link_address.data(), r.link_address.size()));
  tlv(kTagIdentity, as_view(r.identity));
  Bytes caps;
  append_u32_be(caps, r.capabilities);
  tlv(kTagCapabilities, caps);
  return out;
}

PairingRecord decode_pairing_record(ByteView data) {
  PairingRecord r;
  bool seen[5] = {};
  int last_tag = 0;
  std::size_t offset = 0;
  while (offset < data.size()) {
    std::size_t entry_start = offset;
    std::uint8_t tag = data[offset];
    if (offset + 3 > data.size()) throw ParseError("truncated TLV header", entry_start);
    std::uint16_t len = read_u16_be(data, offset + 1);
    offset += 3;
    if (offset + len > data.size()) throw ParseError("truncated TLV value", entry_start);
    ByteView value = data.subspan(offset, len);
    offset += len;
    if (tag < kTagName || tag > kTagCapabilities)
      throw ParseError("unknown TLV tag", entry_start);
    if (tag <= last_tag)
      throw ParseError(seen[tag] ? "duplicate TLV tag" : "TLV tags out of order", entry_start);
    last_tag = tag;
    seen[tag] = true;
    switch (tag) {
      case kTagName:
        r.device_name.assign(value.begin(), value.end());
        break;
      case kTagAddress:
        if (len != 6) throw ParseError("link address must be 6 bytes", entry_start);
        std::copy(value.begin(), value.end(), r.link_address.begin());
        break;
      case kTagIdentity:
        if (len == 0) throw ParseError("identity must be non-empty", entry_start);
        r.identity.assign(value.begin(), value.end());
        break;
      case kTagCapabilities:
        if (len != 4) throw ParseError("capabilities must be 4 bytes", entry_start);
        r.capabilities = read_u32_be(data, offset - 4);
        break;
    }
  }
  for (std::uint8_t tag = kTagName; tag <= kTagCapabilities; ++tag)
    if (!seen[tag]) throw ParseError("missing TLV tag " + std::to_string(tag), data.size());
  return r;
}

// --- transcript & channel ---

void Transcript::record(std::string_view direction, ByteView frame) {
  entries_.push_back({next_seq_++, std::string(direction), Bytes(frame.begin(), frame.end())});
}

std::string Transcript::to_lines() const {
  std::string out;
  for (const Entry& e : entries_) {
    out += e.direction;
    out += ',';
    out += to_hex(e.frame);
    out += '\n';
  }
  return out;
}

std::string Transcript::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const Entry& e : entries_) {
    arr.push_back({{"seq", e.seq}, {"direction", e.direction}, {"frame_hex", to_hex(e.frame)}});
  }
  return arr.dump(2) + "\n";
}

Channel::Channel(std::string name_a, std::string name_b, std::shared_ptr<Transcript> transcript)
    : name_a_(std::move(name_a)), name_b_(std::move(name_b)), transcript_(std::move(transcript)) {}

void Channel::push(bool from_a, ByteView frame) {
  Bytes carried(frame.begin(), frame.end());
  if (tamper_) carried = tamper_(std::move(carried));
  if (transcript_) {
    std::string dir = from_a ? name_a_ + "->" + name_b_ : name_b_ + "->" + name_a_;
    transcript_->record(dir, carried);
  }
  (from_a ? to_b_ : to_a_).push_back(std::move(carried));
}

std::optional<Bytes> Channel::pop(bool for_a) {
  auto& queue = for_a ? to_a_ : to_b_;
  if (queue.empty()) return std::nullopt;
  Bytes frame = std::move(queue.front());
  queue.pop_front();
  return frame;
}

void Channel::Port::send(ByteView frame) { ch_->push(is_a_, frame); }
std::optional<Bytes> Channel::Port::recv() { return ch_->pop(is_a_); }
bool Channel::Port::pending() const { return is_a_ ? !ch_->to_a_.empty() : !ch_->to_b_.empty(); }

// --- PKG server ---

Bytes PkgServer::handle(ByteView frame) const {
  WireFrame f{FrameType::Error, {}};
  try {
    f = decode_frame(frame);
  } catch (const ParseError& e) {
    return make_error_frame(0x02, e.what());
  }
  if (f.type != FrameType::ExtractReq)
    return make_error_frame(0x01, "expected EXTRACT_REQ");
  std::string id(f.payload.begin(), f.payload.end());
  if (id.empty()) return make_error_frame(0x03, "empty identity");
  IdentityKeys keys = extract(params_, master_, id);
  return encode_frame({FrameType::ExtractResp, serialize_point(*keys.pr)});
}

void PkgServer::serve_one(Channel::Port& port) const {
  auto frame = port.recv();
  if (!frame) throw Error("PKG had no pending request to serve");
  port.send(handle(*frame));
}

// --- device ---

Device::Device(SystemParams params, PairingRecord self, std::unique_ptr<EntropySource> rng,
               bool allow_repairing)
    : params_(std::move(params)),
      self_(std::move(self)),
      rng_(std::move(rng)),
      allow_repairing_(allow_repairing) {
  if (self_.identity.empty()) throw Error("device identity must be non-empty");
  if (!rng_) throw Error("device needs an entropy source");
}

const Bytes& Device::session_key() const {
  if (!session_) throw StateError("no established session");
  return session_->key;
}

void Device::require_paired(const char* op) const {
  if (state_ == DeviceStateKind::Unpaired)
    throw StateError(std::string(op) + " requires a completed pairing phase");
}

const IdentityKeys& Device::require_keys(const char* op) const {
  if (!keys_ || !keys_->pr)
    throw StateError(std::string(op) + " requires an extracted private key");
  return *keys_;
}

Bytes Device::recv_or_fail(Channel::Port& port, const char* what) {
  auto frame = port.recv();
  if (!frame) throw Error(std::string("expected ") + what + " but the channel is empty");
  return std::move(*frame);
}

void Device::send_extract_request(Channel::Port& pkg) {
  // independent of pairing state by design
  pkg.send(encode_frame({FrameType::ExtractReq, to_bytes(self_.identity)}));
}

void Device::complete_extract(Channel::Port& pkg) {
  IdentityKeys candidate = derive_public_key(params_, self_.identity);
  WireFrame resp = decode_frame(recv_or_fail(pkg, "EXTRACT_RESP"));
  if (resp.type == FrameType::Error) raise_peer_error(resp);
  if (resp.type != FrameType::ExtractResp) throw Error("unexpected frame type from PKG");
  candidate.pr = parse_fp_point(resp.payload, params_.field());
  if (!verify_identity_keys(params_, candidate))
    throw VerificationError("PKG response failed the key-consistency check e(Pr,P) = e(Pu,PuPKG)");
  keys_ = std::move(candidate);
}

void Device::begin_pairing(Channel::Port& oob) {
  if (state_ != DeviceStateKind::Unpaired && !allow_repairing_)
    throw StateError("already paired and re-pairing is not allowed");
  oob.send(encode_frame({FrameType::PairRecord, encode_pairing_record(self_)}));
}

void Device::complete_pairing(Channel::Port& oob, bool respond) {
  if (state_ != DeviceStateKind::Unpaired && !allow_repairing_)
    throw StateError("already paired and re-pairing is not allowed");
  Bytes raw = recv_or_fail(oob, "PAIR_RECORD");
  PairingRecord record;
  try {
    WireFrame f = decode_frame(raw);
    if (f.type == FrameType::Error) raise_peer_error(f);
    if (f.type != FrameType::PairRecord) throw ParseError("expected a PAIR_RECORD frame");
    record = decode_pairing_record(f.payload);
  } catch (const ParseError& e) {
    // pairing aborted, state unchanged; tell the peer why
    if (respond) oob.send(make_error_frame(0x10, e.what()));
    throw;
  }
  if (respond) oob.send(encode_frame({FrameType::PairRecord, encode_pairing_record(self_)}));
  peer_ = std::move(record);
  state_ = DeviceStateKind::Paired;
  session_.reset();
  pending_.reset();
}

void Device::send_direct(Channel::Port& link, ByteView msg) {
  require_paired("send_direct");
  Bytes block = frame_direct_message(msg, params_.n_bytes());
  Ciphertext ct = encrypt(params_, peer_->identity, block, *rng_);
  link.send(encode_frame({FrameType::DirectMsg, ct.to_bytes()}));
}

Bytes Device::recv_direct(Channel::Port& link) {
  require_paired("recv_direct");
  const IdentityKeys& keys = require_keys("recv_direct");
  WireFrame f = decode_frame(recv_or_fail(link, "DIRECT_MSG"));
  if (f.type == FrameType::Error) raise_peer_error(f);
  if (f.type != FrameType::DirectMsg) throw Error("unexpected frame type for direct receive");
  Ciphertext ct = Ciphertext::from_bytes(f.payload, params_);
  return unframe_direct_message(decrypt(params_, keys, ct));
}

void Device::derive_session_secrets(PendingSession& ps, const FpPoint& peer_share) const {
  if (peer_share.is_infinity()) throw Error("session share must not be the point at infinity");
  FpPoint z = scalar_mul_fast(ps.x, peer_share);
  if (z.is_infinity()) throw Error("degenerate session secret");
  const std::string& init_id = ps.initiator ? self_.identity : peer_->identity;
  const std::string& resp_id = ps.initiator ? peer_->identity : self_.identity;
  const Bytes& init_share = ps.initiator ? ps.own_share : ps.peer_share;
  const Bytes& resp_share = ps.initiator ? ps.peer_share : ps.own_share;
  const Bytes& init_nonce = ps.initiator ? ps.own_nonce : ps.peer_nonce;
  const Bytes& resp_nonce = ps.initiator ? ps.peer_nonce : ps.own_nonce;
  Bytes core = concat({as_view(init_share), as_view(resp_share), as_view(init_nonce),
                       as_view(resp_nonce), as_view(frame_identity(init_id)),
                       as_view(frame_identity(resp_id))});
  Bytes k = sha256_concat(
      {as_view(std::string_view("IBEPAIR-SK")), as_view(serialize_point(z)), as_view(core)});
  ps.secrets.key = k;
  ps.secrets.enc_key = sha256_concat({as_view(std::string_view("IBEPAIR-SENC")), as_view(k)});
  ps.secrets.mac_key = sha256_concat({as_view(std::string_view("IBEPAIR-SMAC")), as_view(k)});
}

Bytes Device::confirmation_mac(const PendingSession& ps, bool from_initiator) const {
  const Bytes& init_share = ps.initiator ? ps.own_share : ps.peer_share;
  const Bytes& resp_share = ps.initiator ? ps.peer_share : ps.own_share;
  const Bytes& init_nonce = ps.initiator ? ps.own_nonce : ps.peer_nonce;
  const Bytes& resp_nonce = ps.initiator ? ps.peer_nonce : ps.own_nonce;
  Bytes conf_key =
      sha256_concat({as_view(std::string_view("IBEPAIR-CONF")), as_view(ps.secrets.key)});
  Bytes msg{from_initiator ? std::uint8_t{0x01} : std::uint8_t{0x02}};
  append(msg, concat({as_view(init_share), as_view(resp_share), as_view(init_nonce),
                      as_view(resp_nonce)}));
  return hmac_sha256(conf_key, msg);
}

void Device::session_start(Channel::Port& link) {
  require_paired("establish_session");
  require_keys("establish_session");
  PendingSession ps;
  ps.initiator = true;
  ps.x = random_scalar(*rng_, params_.q());
  ps.own_nonce = rng_->bytes(kNonceLen);
  ps.own_share = serialize_point(scalar_mul_fast(ps.x, params_.generator()));
  Bytes payload = concat({as_view(ps.own_share), as_view(ps.own_nonce)});
  HybridCiphertext hc = hybrid_encrypt(params_, peer_->identity, payload, *rng_);
  link.send(encode_frame({FrameType::SessionInit, hc.to_bytes()}));
  pending_ = std::move(ps);
}

void Device::session_respond(Channel::Port& link) {
  require_paired("establish_session");
  const IdentityKeys& keys = require_keys("establish_session");
  WireFrame f = decode_frame(recv_or_fail(link, "SESSION_INIT"));
  if (f.type == FrameType::Error) raise_peer_error(f);
  if (f.type != FrameType::SessionInit) throw Error("expected SESSION_INIT");
  Bytes payload = hybrid_decrypt(params_, keys, HybridCiphertext::from_bytes(f.payload, params_));
  const std::size_t point_len = 1 + 2 * params_.field()->byte_length();
  if (payload.size() != point_len + kNonceLen)
    throw ParseError("SESSION_INIT payload has wrong length", payload.size());
  FpPoint peer_share =
      parse_fp_point(ByteView(payload).subspan(0, point_len), params_.field());

  PendingSession ps;
  ps.initiator = false;
  ps.x = random_scalar(*rng_, params_.q());
  ps.own_nonce = rng_->bytes(kNonceLen);
  ps.own_share = serialize_point(scalar_mul_fast(ps.x, params_.generator()));
  ps.peer_share = Bytes(payload.begin(), payload.begin() + point_len);
  ps.peer_nonce = Bytes(payload.begin() + point_len, payload.end());
  derive_session_secrets(ps, peer_share);

  Bytes mac = confirmation_mac(ps, /*from_initiator=*/false);
  Bytes reply = concat({as_view(ps.own_share), as_view(ps.own_nonce), as_view(mac)});
  HybridCiphertext hc = hybrid_encrypt(params_, peer_->identity, reply, *rng_);
  link.send(encode_frame({FrameType::SessionConfirm, hc.to_bytes()}));
  pending_ = std::move(ps);
}

void Device::session_finish_initiator(Channel::Port& link) {
  require_paired("establish_session");
  const IdentityKeys& keys = require_keys("establish_session");
  if (!pending_ || !pending_->initiator) throw StateError("no session in progress");
  WireFrame f = decode_frame(recv_or_fail(link, "SESSION_CONFIRM"));
  if (f.type == FrameType::Error) raise_peer_error(f);
  if (f.type != FrameType::SessionConfirm) throw Error("expected SESSION_CONFIRM");
  Bytes payload = hybrid_decrypt(params_, keys, HybridCiphertext::from_bytes(f.payload, params_));
  const std::size_t point_len = 1 + 2 * params_.field()->byte_length();
  if (payload.size() != point_len + kNonceLen + kMacLen) {
    pending_.reset();
    throw ParseError("SESSION_CONFIRM payload has wrong length", payload.size());
  }
  FpPoint peer_share =
      parse_fp_point(ByteView(payload).subspan(0, point_len), params_.field());
  pending_->peer_share = Bytes(payload.begin(), payload.begin() + point_len);
  pending_->peer_nonce =
      Bytes(payload.begin() + point_len, payload.begin() + point_len + kNonceLen);
  Bytes peer_mac(payload.begin() + point_len + kNonceLen, payload.end());
  derive_session_secrets(*pending_, peer_share);
  if (!ct_equal(peer_mac, confirmation_mac(*pending_, /*from_initiator=*/false))) {
    pending_.reset();
    throw AuthenticationError("session confirmation MAC mismatch; aborting");
  }
  Bytes mac = confirmation_mac(*pending_, /*from_initiator=*/true);
  HybridCiphertext hc = hybrid_encrypt(params_, peer_->identity, mac, *rng_);
  link.send(encode_frame({FrameType::SessionConfirm, hc.to_bytes()}));
  session_ = std::move(pending_->secrets);
  pending_.reset();
  state_ = DeviceStateKind::SessionReady;
}

void Device::session_finish_responder(Channel::Port& link) {
  require_paired("establish_session");
  const IdentityKeys& keys = require_keys("establish_session");
  if (!pending_ || pending_->initiator) throw StateError("no session in progress");
  WireFrame f = decode_frame(recv_or_fail(link, "SESSION_CONFIRM"));
  if (f.type == FrameType::Error) raise_peer_error(f);
  if (f.type != FrameType::SessionConfirm) throw Error("expected SESSION_CONFIRM");
  Bytes payload = hybrid_decrypt(params_, keys, HybridCiphertext::from_bytes(f.payload, params_));
  // the confirmation covers our fresh nonce, so replayed transcripts die here
  if (payload.size() != kMacLen ||
      !ct_equal(payload, confirmation_mac(*pending_, /*from_initiator=*/true))) {
    pending_.reset();
    throw AuthenticationError("session confirmation MAC mismatch; aborting");
  }
  session_ = std::move(pending_->secrets);
  pending_.reset();
  state_ = DeviceStateKind::SessionReady;
}

void Device::send_bulk(Channel::Port& link, ByteView payload) {
  if (state_ != DeviceStateKind::SessionReady)
    throw StateError("send_bulk requires an established session");
  Bytes nonce = rng_->bytes(kNonceLen);
  Bytes body = aes256_ctr(session_->enc_key, nonce, payload);
  Bytes tag = hmac_sha256(session_->mac_key, concat({as_view(nonce), as_view(body)}));
  link.send(encode_frame(
      {FrameType::BulkMsg, concat({as_view(nonce), as_view(body), as_view(tag)})}));
}

Bytes Device::recv_bulk(Channel::Port& link) {
  if (state_ != DeviceStateKind::SessionReady)
    throw StateError("recv_bulk requires an established session");
  WireFrame f = decode_frame(recv_or_fail(link, "BULK_MSG"));
  if (f.type == FrameType::Error) raise_peer_error(f);
  if (f.type != FrameType::BulkMsg) throw Error("expected BULK_MSG");
  if (f.payload.size() < kNonceLen + kMacLen)
    throw ParseError("bulk frame too short", f.payload.size());
  ByteView payload(f.payload);
  ByteView nonce = payload.subspan(0, kNonceLen);
  ByteView body = payload.subspan(kNonceLen, payload.size() - kNonceLen - kMacLen);
  ByteView tag = payload.subspan(payload.size() - kMacLen);
  Bytes expected = hmac_sha256(session_->mac_key, concat({nonce, body}));
  if (!ct_equal(expected, tag)) throw AuthenticationError("bulk message tag mismatch");
  return aes256_ctr(session_->enc_key, nonce, body);
}

void pair_devices(Device& a, Device& b, Channel& oob) {
  a.begin_pairing(oob.a());
  b.complete_pairing(oob.b(), /*respond=*/true);
  a.complete_pairing(oob.a(), /*respond=*/false);
}

void establish_session(Device& a, Device& b, Channel& link) {
  a.session_start(link.a());
  b.session_respond(link.b());
  a.session_finish_initiator(link.a());
  b.session_finish_responder(link.b());
}

void request_private_key(Device& d, const PkgServer& pkg, Channel& ch) {
  d.send_extract_request(ch.a());
  pkg.serve_one(ch.b());
  d.complete_extract(ch.a());
}

Bytes gather_entropy(EntropySource& source, std::size_t nbytes) {
  if (nbytes < 1) throw Error("gather_entropy needs nbytes >= 1");
  return source.bytes(nbytes);
}

}  // namespace ibepair
