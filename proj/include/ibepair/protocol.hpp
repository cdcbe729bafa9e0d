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

#include <array>
#include <deque>
#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "ibepair/ibe.hpp"

namespace ibepair {

// Two-phase device protocol over simulated transports: an out-of-band
// pairing-record exchange bootstraps identities, then all communication is
// IBE-secured (direct block, enveloped-DH session, symmetric bulk).
//
// Channels are reliable in-memory pipes; each Device is a single logical
// actor. Frames are passed by value, so ports may move between threads as
// long as each is driven by one thread at a time.

// --- wire formats (bit-exact) ---

enum class FrameType : std::uint8_t {
  ExtractReq = 0x01,
  ExtractResp = 0x02,
  PairRecord = 0x10,
  DirectMsg = 0x20,
  SessionInit = 0x21,
  SessionConfirm = 0x22,
  BulkMsg = 0x30,
  Error = 0x7F,
};

struct WireFrame {
  FrameType type;
  Bytes payload;
};

// BE32 length (= |payload| + 1) || type || payload.
Bytes encode_frame(const WireFrame& f);
WireFrame decode_frame(ByteView data);  // ParseError on truncation/unknown type

// The out-of-band pairing message. TLV: tag(1) || BE16 length || value, tags
// strictly ascending: 0x01 name, 0x02 link address (6 bytes), 0x03 identity
// (non-empty), 0x04 capability flags (4 bytes). All four are mandatory, so
// encoding is canonical and decode/encode round-trips bit-exactly.
struct PairingRecord {
  std::string device_name;
  std::array<std::uint8_t, 6> link_address{};
  std::string identity;
  std::uint32_t capabilities = 0;

  bool operator==(const PairingRecord&) const = default;
};

Bytes encode_pairing_record(const PairingRecord& r);
PairingRecord decode_pairing_record(ByteView data);  // ParseError names the offset

// Append-only log of every frame on every tapped channel; timestamps are
// logical counters so recorded runs are reproducible.
class Transcript {
 public:
  struct Entry {
    std::uint64_t seq;
    std::string direction;
    Bytes frame;
  };

  void record(std::string_view direction, ByteView frame);
  const std::vector<Entry>& entries() const { return entries_; }

  std::string to_lines() const;  // "dir,hex(frame)" per entry
  std::string to_json() const;   // structured variant with counters

 private:
  std::vector<Entry> entries_;
  std::uint64_t next_seq_ = 0;
};

// Reliable, ordered, in-memory duplex frame pipe with an optional transcript
// tap and an optional in-transit tamper hook (the simulated adversary).
class Channel {
 public:
  class Port {
   public:
    void send(ByteView frame);
    std::optional<Bytes> recv();
    bool pending() const;

   private:
    friend class Channel;
    Port(Channel* ch, bool is_a) : ch_(ch), is_a_(is_a) {}
    Channel* ch_;
    bool is_a_;
  };

  Channel(std::string name_a, std::string name_b,
          std::shared_ptr<Transcript> transcript = nullptr);

  Port& a() { return a_; }
  Port& b() { return b_; }

  // Applied to every frame in transit (after which the transcript records
  // what was actually carried).
  void set_tamper(std::function<Bytes(Bytes)> hook) { tamper_ = std::move(hook); }

 private:
  friend class Port;
  void push(bool from_a, ByteView frame);
  std::optional<Bytes> pop(bool for_a);

  std::string name_a_, name_b_;
  std::shared_ptr<Transcript> transcript_;
  std::function<Bytes(Bytes)> tamper_;
  std::deque<Bytes> to_a_, to_b_;
  Port a_{this, true};
  Port b_{this, false};
};

// The PKG endpoint: answers EXTRACT_REQ(identity) with EXTRACT_RESP(private
// point). Requestor authenticity and transport security are assumed by the
// simulation (declared out of scope); clients still verify the returned key.
class PkgServer {
 public:
  PkgServer(SystemParams params, MasterKey master)
      : params_(std::move(params)), master_(std::move(master)) {}

  Bytes handle(ByteView frame) const;
  void serve_one(Channel::Port& port) const;

 private:
  SystemParams params_;
  MasterKey master_;
};

enum class DeviceStateKind { Unpaired, Paired, SessionReady };

// One simulated endpoint. State machine: UNPAIRED -> PAIRED -> SESSION_READY;
// no communication-phase operation is accepted while UNPAIRED. Key extraction
// is independent of pairing and allowed in any state.
class Device {
 public:
  Device(SystemParams params, PairingRecord self, std::unique_ptr<EntropySource> rng,
         bool allow_repairing = false);

  DeviceStateKind state() const { return state_; }
  const PairingRecord& self_record() const { return self_; }
  const std::optional<PairingRecord>& peer() const { return peer_; }
  const std::optional<IdentityKeys>& keys() const { return keys_; }
  // Established session secret; for in-test comparison only, never on wire.
  const Bytes& session_key() const;

  // --- extraction (any state) ---
  void send_extract_request(Channel::Port& pkg);
  // Receives EXTRACT_RESP and accepts the key only if it passes the
  // key-consistency equation; otherwise throws and keeps the old state.
  void complete_extract(Channel::Port& pkg);

  // --- pairing phase (out-of-band channel) ---
  void begin_pairing(Channel::Port& oob);
  // respond = true replies with our own record (responder side).
  void complete_pairing(Channel::Port& oob, bool respond);

  // --- communication phase: direct IBE block ---
  void send_direct(Channel::Port& link, ByteView msg);
  Bytes recv_direct(Channel::Port& link);

  // --- communication phase: enveloped-DH session ---
  void session_start(Channel::Port& link);
  void session_respond(Channel::Port& link);
  void session_finish_initiator(Channel::Port& link);
  void session_finish_responder(Channel::Port& link);

  // --- communication phase: symmetric bulk (requires SESSION_READY) ---
  void send_bulk(Channel::Port& link, ByteView payload);
  Bytes recv_bulk(Channel::Port& link);

 private:
  struct SessionSecrets {
    Bytes key;      // derived K (kept for tests)
    Bytes enc_key;  // AES-256 key
    Bytes mac_key;  // HMAC key
  };
  struct PendingSession {
    bool initiator;
    mpz_class x;
    Bytes own_nonce;
    Bytes peer_nonce;
    Bytes own_share;   // serialized xP
    Bytes peer_share;  // serialized peer's share
    SessionSecrets secrets;
  };

  void require_paired(const char* op) const;
  const IdentityKeys& require_keys(const char* op) const;
  Bytes recv_or_fail(Channel::Port& port, const char* what);
  void derive_session_secrets(PendingSession& ps, const FpPoint& peer_share) const;
  Bytes confirmation_mac(const PendingSession& ps, bool from_initiator) const;

  SystemParams params_;
  PairingRecord self_;
  std::unique_ptr<EntropySource> rng_;
  bool allow_repairing_;
  DeviceStateKind state_ = DeviceStateKind::Unpaired;
  std::optional<IdentityKeys> keys_;
  std::optional<PairingRecord> peer_;
  std::optional<PendingSession> pending_;
  std::optional<SessionSecrets> session_;
};

// Full two-sided drivers for the common case; each call advances both
// actors through one whole protocol exchange.
void pair_devices(Device& a, Device& b, Channel& oob);
void establish_session(Device& a, Device& b, Channel& link);
// Device on channel end A, PKG serving end B.
void request_private_key(Device& d, const PkgServer& pkg, Channel& ch);

// Reads nbytes (>= 1) from the injected source.
Bytes gather_entropy(EntropySource& source, std::size_t nbytes);

}  // namespace ibepair
