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
// count(DISTINCT column) pipeline: the query is treated as a histogram of
// column values, values living only in suppressed histogram buckets are
// assigned to protected entities to form contributions, and the distinct
// count is flattened and noised like an ordinary bucket count. When nothing
// is suppressed the true distinct count is released exactly.

#ifndef ANONQ_DISTINCT_HPP
#define ANONQ_DISTINCT_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "anonq/anonymizer.hpp"

namespace anonq {

// Per-AID assignment of suppressed column values: every suppressed value is
// claimed by exactly one AIDV; the contribution of an AIDV is the number of
// values it claimed. Keys are canonical renderings.
struct DistinctAssignment {
  std::string aid_column;
  std::map<std::string, std::vector<std::string>> assigned;  // AIDV -> values

  std::map<std::string, int64_t> contributions() const {
    std::map<std::string, int64_t> out;
    for (const auto& [aidv, values] : assigned)
      if (!values.empty()) out[aidv] = static_cast<int64_t>(values.size());
    return out;
  }
};

// Rewrites the query as its histogram: the counted column joins the GROUP BY
// and the aggregate becomes count(*).
QueryPlan distinct_histogram_plan(const QueryPlan& plan);

// The assignment traversal for one AID. `membership` maps each suppressed
// column value to the AIDVs that hold it (both canonically rendered); every
// value must have at least one member. AIDVs are visited in ascending order
// of how many suppressed values they hold (ties by h(salt, AIDV)) and claim
// their lexicographically smallest unassigned value until none remain.
DistinctAssignment assign_contributions(
    const std::string& aid_column,
    const std::map<std::string, std::vector<std::string>>& membership,
    const Salt& salt);

namespace detail {

// Full pipeline for count(DISTINCT col) on a non-AID column; called from
// answer().
Answer distinct_answer(const Table& table, const QueryPlan& plan,
                       const AnonParams& params, const Salt& salt,
                       const PipelineTweaks& tweaks);

}  // namespace detail

}  // namespace anonq

#endif  // ANONQ_DISTINCT_HPP
