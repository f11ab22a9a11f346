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
//
// All pseudo-randomness in the engine is derived here. Every noise value,
// threshold, and random group size is a pure function of the secret salt and
// the query/bucket materials, so repeated evaluation of the same query on the
// same table is bit-identical ("sticky").

#ifndef ANONQ_SEEDING_HPP
#define ANONQ_SEEDING_HPP

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace anonq {

using Salt = std::vector<uint8_t>;

// 128-bit opaque seed. Never exposed on any output path.
struct Seed {
  std::array<uint8_t, 16> bytes{};
  auto operator<=>(const Seed&) const = default;
};

// Accumulates length-prefixed components and produces a 128-bit digest
// (SHA-256 truncated). One primitive serves as both the one-way hash and the
// component hash.
class HashStream {
 public:
  HashStream& add(std::string_view bytes);
  HashStream& add(const Seed& seed) {
    return add(std::string_view(reinterpret_cast<const char*>(seed.bytes.data()),
                                seed.bytes.size()));
  }
  HashStream& add(const Salt& salt) {
    return add(std::string_view(reinterpret_cast<const char*>(salt.data()),
                                salt.size()));
  }
  Seed digest() const;

 private:
  std::string buffer_;
};

// Hash of one or more text components.
Seed hash_components(std::initializer_list<std::string_view> parts);

inline Seed xor_seeds(const Seed& a, const Seed& b) {
  Seed out;
  for (size_t i = 0; i < out.bytes.size(); ++i) out.bytes[i] = a.bytes[i] ^ b.bytes[i];
  return out;
}

// Hash of a single AID value, namespaced by its column so equal values in
// different AID columns hash differently.
Seed hash_aidv(std::string_view aid_column, std::string_view aidv_canonical);

// owh(salt, XOR(h(AIDV1), ..., h(AIDVn))). Order-independent. `aidv_hashes`
// must come from a set (duplicates would cancel under XOR).
Seed aid_seed(const Salt& salt, const std::vector<Seed>& aidv_hashes);

// owh(salt, XOR(gb_sql1, ..., gb_sqlN)); the empty list yields owh(salt, 0).
Seed sql_seed(const Salt& salt, const std::vector<Seed>& gb_hashes);

// h(seed, tag) for tag in {"suppress", "noise", "outlier", "top"}.
Seed child_seed(const Seed& seed, std::string_view tag);

// Tie-break key h(salt, AIDV) used when sorting equal contributions.
Seed salted_aidv_key(const Salt& salt, const Seed& aidv_hash);

// Deterministic N(0, sd^2) sample: a 64-bit uniform draw from the seed mapped
// through the inverse normal CDF. Same seed and sd give identical output.
double gauss(const Seed& seed, double sd);

// Deterministic integer uniform on [lo, hi].
int64_t uniform_int(const Seed& seed, int64_t lo, int64_t hi);

}  // namespace anonq

#endif  // ANONQ_SEEDING_HPP
