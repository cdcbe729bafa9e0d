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

#include <string_view>

#include "ibepair/bytes.hpp"

namespace ibepair {

Bytes sha256(ByteView data);
Bytes sha256_concat(std::initializer_list<ByteView> parts);
Bytes hmac_sha256(ByteView key, ByteView data);

// Counter-mode expansion: block i = SHA-256(tag || BE32(i) || data),
// concatenated and truncated to out_len.
Bytes hash_stream(std::string_view tag, ByteView data, std::size_t out_len);

// AES-256-CTR with a 16-byte initial counter block; encryption and
// decryption are the same operation.
Bytes aes256_ctr(ByteView key32, ByteView iv16, ByteView data);

bool ct_equal(ByteView a, ByteView b);

}  // namespace ibepair
