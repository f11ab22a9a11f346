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

#include "anonq/anonymizer.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "anonq/distinct.hpp"
#include "anonq/error.hpp"

namespace anonq {

namespace {

struct ValuesLess {
  bool operator()(const std::vector<BucketValue>& a,
                  const std::vector<BucketValue>& b) const {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }
};

ColumnType group_column_type(const std::vector<ColumnDef>& schema,
                             const std::string& column) {
  for (const auto& col : schema) {
    std::string name = col.name;
    std::transform(name.begin(), name.end(), name.begin(), ::tolower);
    if (name == column) return col.type;
  }
  throw Error(ErrorCode::kUnknownColumn, "column '" + column + "' not in schema");
}

}  // namespace

std::vector<Seed> PerAidStats::aidv_hashes() const {
  std::vector<Seed> hashes;
  hashes.reserve(contributions.size());
  for (const auto& [aidv, count] : contributions)
    hashes.push_back(hash_aidv(aid_column, aidv));
  return hashes;
}

std::vector<Bucket> aggregate_buckets(const Table& table, const QueryPlan& plan) {
  const auto& schema = table.columns();
  const auto& aids = table.aid_columns();

  std::vector<int> group_idx(plan.group_by.size());
  std::vector<ColumnType> group_type(plan.group_by.size());
  for (size_t i = 0; i < plan.group_by.size(); ++i) {
    int idx = table.column_index(plan.group_by[i].column);
    if (idx < 0)
      throw Error(ErrorCode::kUnknownColumn,
                  "unknown column '" + plan.group_by[i].column + "'");
    group_idx[i] = idx;
    group_type[i] = schema[idx].type;
  }
  std::vector<int> aid_idx(aids.size());
  for (size_t a = 0; a < aids.size(); ++a) aid_idx[a] = table.column_index(aids[a]);

  int agg_idx = -1;
  if (plan.aggregate != AggregateKind::kCountStar) {
    agg_idx = table.column_index(plan.aggregate_column);
    if (agg_idx < 0)
      throw Error(ErrorCode::kUnknownColumn,
                  "unknown column '" + plan.aggregate_column + "'");
  }
  const bool distinct_aid =
      plan.aggregate == AggregateKind::kCountDistinct && agg_idx >= 0 &&
      std::any_of(aids.begin(), aids.end(), [&](const std::string& a) {
        return table.column_index(a) == agg_idx;
      });
  if (plan.aggregate == AggregateKind::kCountDistinct && !distinct_aid)
    throw Error(ErrorCode::kInternal,
                "count(DISTINCT non-aid) must go through the distinct pipeline");

  struct Accum {
    int64_t row_count = 0;
    std::vector<std::map<std::string, int64_t>> per_aid;  // AIDV -> counted rows
    // For count(DISTINCT aid): per AID, the distinct counted values per AIDV.
    std::vector<std::map<std::string, std::set<std::string>>> distinct_values;
  };
  std::map<std::vector<BucketValue>, Accum, ValuesLess> groups;

  for (const auto& row : table.rows()) {
    std::vector<BucketValue> key;
    key.reserve(plan.group_by.size());
    for (size_t i = 0; i < plan.group_by.size(); ++i) {
      key.push_back(apply_generalization(plan.group_by[i].spec, row[group_idx[i]],
                                         group_type[i]));
    }
    Accum& acc = groups[std::move(key)];
    if (acc.per_aid.empty()) {
      acc.per_aid.resize(aids.size());
      acc.distinct_values.resize(aids.size());
    }

    bool counted = true;
    if (plan.aggregate == AggregateKind::kCountColumn)
      counted = !is_null(row[agg_idx]);

    if (distinct_aid) {
      std::string counted_value = canonical_render(row[agg_idx]);
      for (size_t a = 0; a < aids.size(); ++a) {
        std::string aidv = canonical_render(row[aid_idx[a]]);
        acc.distinct_values[a][aidv].insert(counted_value);
      }
    } else if (counted) {
      acc.row_count += 1;
      for (size_t a = 0; a < aids.size(); ++a) {
        std::string aidv = canonical_render(row[aid_idx[a]]);
        acc.per_aid[a][aidv] += 1;
      }
    }
  }

  std::vector<Bucket> buckets;
  buckets.reserve(groups.size());
  for (auto& [values, acc] : groups) {
    Bucket b;
    b.values = values;
    b.per_aid.resize(aids.size());
    for (size_t a = 0; a < aids.size(); ++a) b.per_aid[a].aid_column = aids[a];

    if (distinct_aid) {
      // The counted AID contributes one row per AIDV; other AIDs contribute
      // the number of distinct counted values among their rows.
      std::set<std::string> all_values;
      for (size_t a = 0; a < aids.size(); ++a) {
        for (const auto& [aidv, vals] : acc.distinct_values[a]) {
          if (aid_idx[a] == agg_idx) {
            b.per_aid[a].contributions[aidv] = 1;
          } else {
            b.per_aid[a].contributions[aidv] =
                static_cast<int64_t>(vals.size());
          }
          all_values.insert(vals.begin(), vals.end());
        }
      }
      b.true_count = static_cast<int64_t>(all_values.size());
    } else {
      b.true_count = acc.row_count;
      for (size_t a = 0; a < aids.size(); ++a)
        b.per_aid[a].contributions = std::move(acc.per_aid[a]);
      // count(column) with every row null contributes an empty bucket;
      // drop it like a bucket with no rows.
      if (plan.aggregate == AggregateKind::kCountColumn && b.true_count == 0)
        continue;
    }
    buckets.push_back(std::move(b));
  }
  return buckets;
}

bool suppress_bucket(const Bucket& bucket, const AnonParams& params, const Salt& salt,
                     const PipelineTweaks& tweaks) {
  // The comparison value per AID is the number of distinct protected
  // entities, which is what the low_thresh guarantee is stated over.
  for (const auto& stats : bucket.per_aid) {
    double noise = 0.0;
    if (!tweaks.zero_noise) {
      Seed seed = child_seed(aid_seed(salt, stats.aidv_hashes()), "suppress");
      noise = gauss(seed, params.supp_sd);
    }
    double threshold =
        std::max(static_cast<double>(params.low_thresh),
                 static_cast<double>(params.low_thresh) + params.low_mean_gap + noise);
    if (static_cast<double>(stats.distinct_aidvs()) < threshold) return true;
  }
  return false;
}

namespace {

void absorb(Bucket* recipient, const Bucket& merged) {
  recipient->true_count += merged.true_count;
  for (size_t a = 0; a < recipient->per_aid.size(); ++a) {
    for (const auto& [aidv, count] : merged.per_aid[a].contributions)
      recipient->per_aid[a].contributions[aidv] += count;
  }
}

}  // namespace

void merge_suppressed(std::vector<Bucket>* buckets, const QueryPlan& plan) {
  const size_t n_cols = plan.group_by.size();
  if (n_cols < 2) return;  // dropping the only column leaves nothing to match

  // Decisions are made against the pre-merge suppression states.
  std::vector<BucketState> snapshot(buckets->size());
  for (size_t i = 0; i < buckets->size(); ++i) snapshot[i] = (*buckets)[i].state;

  for (size_t s = 0; s < buckets->size(); ++s) {
    if (snapshot[s] != BucketState::kSuppressed) continue;
    Bucket& suppressed = (*buckets)[s];

    for (size_t drop = 0; drop < n_cols && suppressed.state == BucketState::kSuppressed;
         ++drop) {
      // Siblings agree with the suppressed bucket everywhere except `drop`.
      int kept_sibling = -1;
      int kept_count = 0;
      bool other_suppressed = false;
      for (size_t j = 0; j < buckets->size(); ++j) {
        if (j == s) continue;
        const Bucket& candidate = (*buckets)[j];
        bool sibling = true;
        for (size_t c = 0; c < n_cols; ++c) {
          if (c == drop) continue;
          if (!(candidate.values[c] == suppressed.values[c])) {
            sibling = false;
            break;
          }
        }
        if (!sibling) continue;
        if (snapshot[j] == BucketState::kSuppressed) {
          other_suppressed = true;
          break;
        }
        kept_sibling = static_cast<int>(j);
        ++kept_count;
      }
      if (other_suppressed || kept_count != 1) continue;

      absorb(&(*buckets)[kept_sibling], suppressed);
      suppressed.state = BucketState::kMergedAway;
    }
  }
}

std::optional<Bucket> total_suppression_bucket(const std::vector<Bucket>& buckets,
                                               const QueryPlan& plan) {
  int n_suppressed = 0;
  for (const auto& b : buckets)
    if (b.state == BucketState::kSuppressed) ++n_suppressed;
  if (n_suppressed < 2) return std::nullopt;

  Bucket total;
  total.values.assign(plan.group_by.size(), BucketValue::wildcard());
  for (const auto& b : buckets) {
    if (b.state != BucketState::kSuppressed) continue;
    if (total.per_aid.empty()) {
      total.per_aid.resize(b.per_aid.size());
      for (size_t a = 0; a < b.per_aid.size(); ++a)
        total.per_aid[a].aid_column = b.per_aid[a].aid_column;
    }
    absorb(&total, b);
  }
  return total;
}

AidFlattening flatten_one_aid(const PerAidStats& stats, const AnonParams& params,
                              const Salt& salt) {
  AidFlattening out;
  const int64_t n = static_cast<int64_t>(stats.contributions.size());
  const int min_out = params.outlier_range.first;
  const int min_top = params.top_range.first;
  int max_out = params.outlier_range.second;
  int max_top = params.top_range.second;

  if (n < min_out + min_top) {
    out.low_count = true;
    return out;
  }

  // Shrink the maxima to fit the AIDV count, alternating starting with the
  // top range and never going below the minima.
  bool reduce_top = true;
  while (max_out + max_top > n) {
    if (reduce_top) {
      if (max_top > min_top)
        --max_top;
      else
        --max_out;
    } else {
      if (max_out > min_out)
        --max_out;
      else
        --max_top;
    }
    reduce_top = !reduce_top;
  }

  struct Entry {
    int64_t contribution;
    Seed hash;
    Seed tie_key;
  };
  std::vector<Entry> entries;
  entries.reserve(stats.contributions.size());
  double total_contribution = 0.0;
  for (const auto& [aidv, count] : stats.contributions) {
    Seed h = hash_aidv(stats.aid_column, aidv);
    entries.push_back({count, h, salted_aidv_key(salt, h)});
    total_contribution += static_cast<double>(count);
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.contribution != b.contribution) return a.contribution > b.contribution;
    return a.tie_key.bytes < b.tie_key.bytes;
  });

  const int64_t max_count = max_out + max_top;
  std::vector<Seed> max_group;
  for (int64_t i = 0; i < max_count && i < n; ++i) max_group.push_back(entries[i].hash);
  Seed flat = aid_seed(salt, max_group);

  int64_t outlier_count = uniform_int(child_seed(flat, "outlier"), min_out, max_out);
  int64_t top_count = uniform_int(child_seed(flat, "top"), min_top, max_top);

  double top_sum = 0.0;
  for (int64_t i = outlier_count; i < outlier_count + top_count; ++i)
    top_sum += static_cast<double>(entries[i].contribution);
  double top_avg = top_sum / static_cast<double>(top_count);

  double adjustment = 0.0;
  for (int64_t i = 0; i < outlier_count; ++i)
    adjustment -= static_cast<double>(entries[i].contribution) - top_avg;

  double flattened_avg =
      (total_contribution + adjustment) / static_cast<double>(n);

  out.count_adjustment = adjustment;
  out.adjusted_sd = params.base_sd * std::max(flattened_avg, 0.5 * top_avg);
  return out;
}

FlatteningResult flatten_bucket(const Bucket& bucket, const AnonParams& params,
                                const Salt& salt) {
  FlatteningResult out;
  bool any = false;
  const PerAidStats* sd_source = nullptr;
  for (const auto& stats : bucket.per_aid) {
    AidFlattening f = flatten_one_aid(stats, params, salt);
    if (f.low_count) continue;  // sentinel AIDs are excluded from composition
    any = true;
    if (std::abs(f.count_adjustment) > std::abs(out.count_adjustment))
      out.count_adjustment = f.count_adjustment;
    if (f.adjusted_sd > out.adjusted_sd) {
      out.adjusted_sd = f.adjusted_sd;
      sd_source = &stats;
    }
  }
  if (!any) {
    out.all_low_count = true;
    return out;
  }
  out.noise_aidv_hashes = sd_source->aidv_hashes();
  return out;
}

std::vector<Seed> bucket_gb_hashes(const QueryPlan& plan,
                                   const std::vector<ColumnDef>& schema,
                                   const std::vector<BucketValue>& values) {
  std::vector<Seed> hashes;
  hashes.reserve(plan.group_by.size());
  for (size_t i = 0; i < plan.group_by.size(); ++i) {
    const SelectedColumn& col = plan.group_by[i];
    const GeneralizationSpec& spec = col.spec;

    bool omit_range = spec.function == GenFunction::kNone;
    if ((spec.function == GenFunction::kFloor ||
         spec.function == GenFunction::kCeiling ||
         spec.function == GenFunction::kRound) &&
        spec.width == 1.0 &&
        group_column_type(schema, col.column) == ColumnType::kInteger) {
      // K=1 on an integer column behaves like no function at all, and must
      // seed identically to keep the buckets' noise aligned.
      omit_range = true;
    }

    HashStream h;
    h.add(col.column).add(values[i].seed_render());
    if (!omit_range) {
      h.add(gen_function_name(spec.function));
      switch (spec.function) {
        case GenFunction::kFloor:
        case GenFunction::kCeiling:
        case GenFunction::kRound:
          h.add(render_double(spec.width));
          break;
        case GenFunction::kBucketWidth:
          h.add(render_double(spec.low));
          h.add(render_double(spec.high));
          h.add(std::to_string(spec.bin_count));
          break;
        case GenFunction::kSubstring:
          h.add(std::to_string(spec.offset));
          h.add(std::to_string(spec.length));
          break;
        case GenFunction::kDateTrunc:
          h.add(date_trunc_period_name(spec.period));
          break;
        case GenFunction::kNone:
          break;
      }
    }
    hashes.push_back(h.digest());
  }
  return hashes;
}

int64_t add_noise(const Bucket& bucket, const FlatteningResult& flat,
                  const QueryPlan& plan, const std::vector<ColumnDef>& schema,
                  const AnonParams& params, const Salt& salt,
                  const PipelineTweaks& tweaks) {
  if (flat.all_low_count) return params.low_thresh;

  double adjusted =
      std::max(0.0, static_cast<double>(bucket.true_count) + flat.count_adjustment);

  double noisy = adjusted;
  if (!tweaks.zero_noise) {
    double layer_sd = flat.adjusted_sd / std::sqrt(2.0);
    Seed aid = child_seed(aid_seed(salt, flat.noise_aidv_hashes), "noise");
    Seed sql = child_seed(sql_seed(salt, bucket_gb_hashes(plan, schema, bucket.values)),
                          "noise");
    noisy += gauss(aid, layer_sd) + gauss(sql, layer_sd);
  }
  int64_t released = std::llround(noisy);
  if (released < params.low_thresh) released = params.low_thresh;
  return released;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
  return out;
}

}  // namespace

std::string Answer::to_csv() const {
  std::string out;
  for (size_t i = 0; i < column_labels.size(); ++i) {
    if (i) out += ',';
    out += csv_field(column_labels[i]);
  }
  out += '\n';
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.values.size(); ++i) {
      if (i) out += ',';
      out += csv_field(row.values[i].output_render());
    }
    if (!expand_rows) {
      if (!row.values.empty()) out += ',';
      out += std::to_string(row.count);
    }
    out += '\n';
  }
  return out;
}

std::string Answer::to_json() const {
  std::string out = "{\"columns\":[";
  for (size_t i = 0; i < column_labels.size(); ++i) {
    if (i) out += ',';
    out += json_string(column_labels[i]);
  }
  out += "],\"rows\":[";
  for (size_t r = 0; r < rows.size(); ++r) {
    if (r) out += ',';
    out += '[';
    for (size_t i = 0; i < rows[r].values.size(); ++i) {
      if (i) out += ',';
      const BucketValue& v = rows[r].values[i];
      if (v.kind == BucketValue::Kind::kRegular && is_null(v.value))
        out += "null";
      else if (v.kind == BucketValue::Kind::kRegular &&
               std::holds_alternative<int64_t>(v.value))
        out += std::to_string(std::get<int64_t>(v.value));
      else if (v.kind == BucketValue::Kind::kRegular &&
               std::holds_alternative<double>(v.value))
        out += render_double(std::get<double>(v.value));
      else
        out += json_string(v.output_render());
    }
    if (!expand_rows) {
      if (!rows[r].values.empty()) out += ',';
      out += std::to_string(rows[r].count);
    }
    out += ']';
  }
  out += "]}";
  return out;
}

namespace {

std::vector<std::string> answer_labels(const QueryPlan& plan) {
  // Labels mirror the canonical SQL rendering of each expression.
  std::vector<std::string> labels;
  for (const auto& col : plan.group_by) labels.push_back(render_column_expr(col));
  if (!plan.expand_rows) labels.push_back("count");
  return labels;
}

}  // namespace

Answer answer(const Table& table, const QueryPlan& plan_in, const AnonParams& params,
              const Salt& salt, const PipelineTweaks& tweaks) {
  params.validate();
  if (salt.size() < 16)
    throw Error(ErrorCode::kInvalidConfig, "salt must be at least 128 bits");
  QueryPlan plan = normalize(plan_in);

  if (plan.aggregate == AggregateKind::kCountDistinct) {
    int agg_idx = table.column_index(plan.aggregate_column);
    bool is_aid = false;
    for (const auto& aid : table.aid_columns())
      if (table.column_index(aid) == agg_idx) is_aid = true;
    if (!is_aid) return detail::distinct_answer(table, plan, params, salt, tweaks);
  }

  Answer out;
  out.column_labels = answer_labels(plan);
  out.expand_rows = plan.expand_rows;

  std::vector<Bucket> buckets = aggregate_buckets(table, plan);
  for (auto& b : buckets)
    b.state = suppress_bucket(b, params, salt, tweaks) ? BucketState::kSuppressed
                                                       : BucketState::kKept;
  if (!tweaks.disable_merging) merge_suppressed(&buckets, plan);
  std::optional<Bucket> total = total_suppression_bucket(buckets, plan);

  auto release = [&](const Bucket& b) -> std::optional<int64_t> {
    FlatteningResult flat = flatten_bucket(b, params, salt);
    return add_noise(b, flat, plan, table.columns(), params, salt, tweaks);
  };

  for (auto& b : buckets) {
    if (b.state != BucketState::kKept) continue;
    auto count = release(b);
    out.rows.push_back({b.values, *count});
  }
  if (total && !suppress_bucket(*total, params, salt, tweaks)) {
    auto count = release(*total);
    out.rows.push_back({total->values, *count});
  }

  if (plan.expand_rows) {
    std::vector<AnswerRow> expanded;
    for (const auto& row : out.rows) {
      for (int64_t i = 0; i < row.count; ++i) expanded.push_back({row.values, 1});
    }
    out.rows = std::move(expanded);
  }
  return out;
}

Answer answer_sql(const Table& table, std::string_view sql, TrustMode mode,
                  const AnonParams& params, const Salt& salt,
                  const PipelineTweaks& tweaks) {
  QueryPlan plan = compile_query(sql, mode, table.columns());
  return answer(table, plan, params, salt, tweaks);
}

}  // namespace anonq
