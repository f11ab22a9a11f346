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

#ifndef ANONQ_GENERALIZE_HPP
#define ANONQ_GENERALIZE_HPP

#include <compare>
#include <string>
#include <vector>

#include "anonq/sql.hpp"
#include "anonq/value.hpp"

namespace anonq {

// One generalized column value of an answer bucket. Besides regular values
// this carries the bucket_width out-of-range sentinels and the "*" wildcard
// of the total-suppression row. NULL inputs form their own bucket.
struct BucketValue {
  enum class Kind { kRegular, kBelow, kAbove, kWildcard };

  Kind kind = Kind::kRegular;
  Value value;  // meaningful only for kRegular

  static BucketValue regular(Value v) { return {Kind::kRegular, std::move(v)}; }
  static BucketValue below() { return {Kind::kBelow, {}}; }
  static BucketValue above() { return {Kind::kAbove, {}}; }
  static BucketValue wildcard() { return {Kind::kWildcard, {}}; }

  bool operator==(const BucketValue& other) const {
    if (kind != other.kind) return false;
    if (kind != Kind::kRegular) return true;
    return compare_values(value, other.value) == std::strong_ordering::equal;
  }
  bool operator<(const BucketValue& other) const {
    if (kind != other.kind) return kind < other.kind;
    if (kind != Kind::kRegular) return false;
    return compare_values(value, other.value) == std::strong_ordering::less;
  }

  // Canonical text used for seeding (reserved tokens for the sentinels).
  std::string seed_render() const;
  // Text used on output: NULL is empty, wildcard is "*".
  std::string output_render() const;
};

// Applies one generalization to a raw value. Total: nulls map to the null
// bucket and bucket_width maps out-of-range values to sentinel tokens.
BucketValue apply_generalization(const GeneralizationSpec& spec,
                                 const Value& value, ColumnType column_type);

}  // namespace anonq

#endif  // ANONQ_GENERALIZE_HPP
