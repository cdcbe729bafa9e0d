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

#include "ibepair/hashes.hpp"

#include <openssl/crypto.h>
#include <openssl/evp.h>
#include <openssl/hmac.h>
#include <openssl/sha.h>

#include <memory>

#include "ibepair/errors.hpp"

namespace ibepair {

Bytes sha256(ByteView data) { return sha256_concat({data}); }

Bytes sha256_concat(std::initializer_list<ByteView> parts) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                              EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 init failed");
  for (const auto& part : parts)
    if (EVP_DigestUpdate(ctx.get(), part.data(), part.size()) != 1)
      throw Error("SHA-256 update failed");
  Bytes out(SHA256_DIGEST_LENGTH);
  unsigned int len = 0;
  if (EVP_DigestFinal_ex(ctx.get(), out.data(), &len) != 1 || len != out.size())
    throw Error("SHA-256 final failed");
  return out;
}

Bytes hmac_sha256(ByteView key, ByteView data) {
  Bytes out(SHA256_DIGEST_LENGTH);
  unsigned int len = 0;
  if (HMAC(EVP_sha256(), key.data(), static_cast<int>(key.size()), data.data(), data.size(),
           out.data(), &len) == nullptr || len != out.size())
    throw Error("HMAC-SHA256 failed");
  return out;
}

Bytes hash_stream(std::string_view tag, ByteView data, std::size_t out_len) {
  Bytes out;
  out.reserve(out_len);
  std::uint32_t counter = 0;
  while (out.size() < out_len) {
    Bytes ctr;
    append_u32_be(ctr, counter++);
    Bytes block = sha256_concat({as_view(tag), as_view(ctr), data});
    std::size_t take = std::min(block.size(), out_len - out.size());
    out.insert(out.end(), block.begin(), block.begin() + take);
  }
  return out;
}

Bytes aes256_ctr(ByteView key32, ByteView iv16, ByteView data) {
  if (key32.size() != 32 || iv16.size() != 16)
    throw Error("AES-256-CTR needs a 32-byte key and 16-byte counter block");
  std::unique_ptr<EVP_CIPHER_CTX, decltype(&EVP_CIPHER_CTX_free)> ctx(EVP_CIPHER_CTX_new(),
                                                                      EVP_CIPHER_CTX_free);
  if (!ctx) throw Error("EVP context allocation failed");
  if (EVP_EncryptInit_ex(ctx.get(), EVP_aes_256_ctr(), nullptr, key32.data(), iv16.data()) != 1)
    throw Error("AES-256-CTR init failed");
  Bytes out(data.size());
  int len = 0;
  if (!data.empty() &&
      EVP_EncryptUpdate(ctx.get(), out.data(), &len, data.data(), static_cast<int>(data.size())) !=
          1)
    throw Error("AES-256-CTR update failed");
  int fin = 0;
  if (EVP_EncryptFinal_ex(ctx.get(), out.data() + len, &fin) != 1)
    throw Error("AES-256-CTR final failed");
  return out;
}

bool ct_equal(ByteView a, ByteView b) {
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  return CRYPTO_memcmp(a.data(), b.data(), a.size()) == 0;
}

}  // namespace ibepair
