// Copyright 2026 The anonq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "anonq/seeding.hpp"

#include <openssl/evp.h>

#include <boost/math/distributions/normal.hpp>
#include <cstring>

#include "anonq/error.hpp"

namespace anonq {

namespace {

void append_length_prefixed(std::string& buffer, std::string_view bytes) {
  uint64_t n = bytes.size();
  char len[8];
  for (int i = 0; i < 8; ++i) len[i] = static_cast<char>((n >> (8 * i)) & 0xff);
  buffer.append(len, 8);
  buffer.append(bytes.data(), bytes.size());
}

Seed sha256_truncated(const std::string& buffer) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int digest_len = 0;
  if (EVP_Digest(buffer.data(), buffer.size(), digest, &digest_len, EVP_sha256(),
                 nullptr) != 1 ||
      digest_len < 16) {
    throw Error(ErrorCode::kInternal, "SHA-256 digest failed");
  }
  Seed out;
  std::memcpy(out.bytes.data(), digest, out.bytes.size());
  return out;
}

uint64_t seed_to_u64(const Seed& seed) {
  uint64_t x = 0;
  for (int i = 0; i < 8; ++i) x |= static_cast<uint64_t>(seed.bytes[i]) << (8 * i);
  return x;
}

}  // namespace

HashStream& HashStream::add(std::string_view bytes) {
  append_length_prefixed(buffer_, bytes);
  return *this;
}

Seed HashStream::digest() const { return sha256_truncated(buffer_); }

Seed hash_components(std::initializer_list<std::string_view> parts) {
  HashStream h;
  for (auto p : parts) h.add(p);
  return h.digest();
}

Seed hash_aidv(std::string_view aid_column, std::string_view aidv_canonical) {
  return hash_components({aid_column, aidv_canonical});
}

Seed aid_seed(const Salt& salt, const std::vector<Seed>& aidv_hashes) {
  Seed acc;
  for (const Seed& h : aidv_hashes) acc = xor_seeds(acc, h);
  return HashStream().add(salt).add(acc).digest();
}

Seed sql_seed(const Salt& salt, const std::vector<Seed>& gb_hashes) {
  // An empty GROUP BY accumulates to the all-zero block: owh(salt, 0).
  Seed acc;
  for (const Seed& h : gb_hashes) acc = xor_seeds(acc, h);
  return HashStream().add(salt).add(acc).digest();
}

Seed child_seed(const Seed& seed, std::string_view tag) {
  return HashStream().add(seed).add(tag).digest();
}

Seed salted_aidv_key(const Salt& salt, const Seed& aidv_hash) {
  return HashStream().add(salt).add(aidv_hash).digest();
}

double gauss(const Seed& seed, double sd) {
  // Single-draw inverse-CDF transform keeps the sample a deterministic
  // function of the seed; sd scales the unit sample exactly.
  uint64_t bits = seed_to_u64(seed);
  double u = (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;  // (0, 1)
  static const boost::math::normal_distribution<double> unit(0.0, 1.0);
  return sd * boost::math::quantile(unit, u);
}

int64_t uniform_int(const Seed& seed, int64_t lo, int64_t hi) {
  if (lo > hi) throw Error(ErrorCode::kInternal, "uniform_int: lo > hi");
  uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
  if (span == 0) return lo;  // full 64-bit range
  return lo + static_cast<int64_t>(seed_to_u64(seed) % span);
}

}  // namespace anonq
