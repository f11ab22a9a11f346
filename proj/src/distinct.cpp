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

#include "anonq/distinct.hpp"

#include <algorithm>
#include <set>

#include "anonq/error.hpp"

namespace anonq {

QueryPlan distinct_histogram_plan(const QueryPlan& plan) {
  if (plan.aggregate != AggregateKind::kCountDistinct)
    throw Error(ErrorCode::kInternal, "not a count(DISTINCT) plan");
  QueryPlan hist = plan;
  SelectedColumn counted;
  counted.column = plan.aggregate_column;
  hist.group_by.push_back(counted);
  hist.aggregate = AggregateKind::kCountStar;
  hist.aggregate_column.clear();
  hist.expand_rows = false;
  return hist;
}

DistinctAssignment assign_contributions(
    const std::string& aid_column,
    const std::map<std::string, std::vector<std::string>>& membership,
    const Salt& salt) {
  DistinctAssignment out;
  out.aid_column = aid_column;

  // Invert to per-AIDV lists of suppressed values, kept sorted so each claim
  // picks the lexicographically smallest unassigned value.
  std::map<std::string, std::vector<std::string>> values_of;
  for (const auto& [value, aidvs] : membership) {
    if (aidvs.empty())
      throw Error(ErrorCode::kInternal, "suppressed value with no AIDV");
    for (const auto& aidv : aidvs) values_of[aidv].push_back(value);
  }
  for (auto& [aidv, values] : values_of) std::sort(values.begin(), values.end());

  struct Entry {
    const std::string* aidv;
    const std::vector<std::string>* values;
    size_t n;
    Seed tie_key;
  };
  std::vector<Entry> order;
  order.reserve(values_of.size());
  for (const auto& [aidv, values] : values_of) {
    Seed key = salted_aidv_key(salt, hash_aidv(aid_column, aidv));
    order.push_back({&aidv, &values, values.size(), key});
  }
  std::sort(order.begin(), order.end(), [](const Entry& a, const Entry& b) {
    if (a.n != b.n) return a.n < b.n;
    return a.tie_key.bytes < b.tie_key.bytes;
  });

  std::set<std::string> unassigned;
  for (const auto& [value, aidvs] : membership) unassigned.insert(value);

  std::vector<bool> active(order.size(), true);
  size_t remaining = order.size();
  while (!unassigned.empty() && remaining > 0) {
    for (size_t i = 0; i < order.size() && !unassigned.empty(); ++i) {
      if (!active[i]) continue;
      const Entry& entry = order[i];
      const std::string* claim = nullptr;
      for (const auto& value : *entry.values) {
        if (unassigned.count(value)) {
          claim = &value;
          break;
        }
      }
      if (!claim) {
        active[i] = false;
        --remaining;
        continue;
      }
      out.assigned[*entry.aidv].push_back(*claim);
      unassigned.erase(*claim);
    }
  }
  if (!unassigned.empty())
    throw Error(ErrorCode::kInternal, "distinct assignment did not terminate");
  return out;
}

namespace detail {

Answer distinct_answer(const Table& table, const QueryPlan& plan,
                       const AnonParams& params, const Salt& salt,
                       const PipelineTweaks& tweaks) {
  Answer out;
  for (const auto& col : plan.group_by) out.column_labels.push_back(render_column_expr(col));
  out.column_labels.push_back("count");
  out.expand_rows = false;

  const size_t n_outer = plan.group_by.size();
  QueryPlan hist_plan = distinct_histogram_plan(plan);
  std::vector<Bucket> hist = aggregate_buckets(table, hist_plan);

  // Regroup histogram buckets under their outer value tuple. The histogram
  // is sorted by value tuple, so outer groups are contiguous.
  struct OuterGroup {
    std::vector<BucketValue> values;
    Bucket outer;              // union of sub-buckets: outer suppression input
    int64_t distinct_count = 0;
    // Per AID: suppressed column value -> member AIDVs.
    std::vector<std::map<std::string, std::vector<std::string>>> suppressed;
    bool any_suppressed = false;
  };
  std::vector<OuterGroup> groups;

  const auto& aids = table.aid_columns();
  for (auto& sub : hist) {
    std::vector<BucketValue> outer_values(sub.values.begin(),
                                          sub.values.begin() + n_outer);
    if (groups.empty() ||
        !(groups.back().values == outer_values)) {
      OuterGroup g;
      g.values = outer_values;
      g.outer.values = outer_values;
      g.outer.per_aid.resize(aids.size());
      for (size_t a = 0; a < aids.size(); ++a) g.outer.per_aid[a].aid_column = aids[a];
      g.suppressed.resize(aids.size());
      groups.push_back(std::move(g));
    }
    OuterGroup& g = groups.back();

    // All rows join the outer bucket, null counted values included.
    g.outer.true_count += sub.true_count;
    for (size_t a = 0; a < aids.size(); ++a) {
      for (const auto& [aidv, count] : sub.per_aid[a].contributions)
        g.outer.per_aid[a].contributions[aidv] += count;
    }

    const BucketValue& counted = sub.values[n_outer];
    bool null_value =
        counted.kind == BucketValue::Kind::kRegular && is_null(counted.value);
    if (null_value) continue;  // count(DISTINCT col) ignores nulls

    g.distinct_count += 1;
    if (suppress_bucket(sub, params, salt, tweaks)) {
      g.any_suppressed = true;
      std::string value_key = counted.seed_render();
      for (size_t a = 0; a < aids.size(); ++a) {
        auto& members = g.suppressed[a][value_key];
        for (const auto& [aidv, count] : sub.per_aid[a].contributions)
          members.push_back(aidv);
      }
    }
  }

  for (auto& g : groups) {
    // The outer bucket undergoes its own suppression decision first.
    if (suppress_bucket(g.outer, params, salt, tweaks)) continue;

    if (!g.any_suppressed) {
      // Nothing suppressed: the true distinct count is exact.
      out.rows.push_back({g.values, g.distinct_count});
      continue;
    }

    // Contributions come from the suppressed-value assignment, and the
    // distinct count stands in for the bucket count in flattening/noise.
    Bucket synthetic;
    synthetic.values = g.values;
    synthetic.true_count = g.distinct_count;
    synthetic.per_aid.resize(aids.size());
    for (size_t a = 0; a < aids.size(); ++a) {
      synthetic.per_aid[a].aid_column = aids[a];
      DistinctAssignment assignment =
          assign_contributions(aids[a], g.suppressed[a], salt);
      synthetic.per_aid[a].contributions = assignment.contributions();
    }

    FlatteningResult flat = flatten_bucket(synthetic, params, salt);
    int64_t released =
        add_noise(synthetic, flat, plan, table.columns(), params, salt, tweaks);
    out.rows.push_back({g.values, released});
  }
  return out;
}

}  // namespace detail

}  // namespace anonq
