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
// The answer pipeline: raw bucket aggregation, the sticky noisy-threshold
// suppression decision, suppressed-bucket merging, flattening of extreme
// contributors with proportional noise, and the final two-layer noise.
// Multi-AID buckets compose worst-case across AIDs.

#ifndef ANONQ_ANONYMIZER_HPP
#define ANONQ_ANONYMIZER_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "anonq/generalize.hpp"
#include "anonq/params.hpp"
#include "anonq/seeding.hpp"
#include "anonq/sql.hpp"
#include "anonq/table.hpp"

namespace anonq {

// Per-AID view of one bucket: which protected entities are in it and how many
// counted rows each contributed. Keys are canonical AIDV renderings.
struct PerAidStats {
  std::string aid_column;
  std::map<std::string, int64_t> contributions;

  size_t distinct_aidvs() const { return contributions.size(); }
  std::vector<Seed> aidv_hashes() const;
};

enum class BucketState { kRaw, kKept, kSuppressed, kMergedAway, kReleased };

struct Bucket {
  std::vector<BucketValue> values;
  int64_t true_count = 0;
  std::vector<PerAidStats> per_aid;  // one entry per configured AID, in order
  BucketState state = BucketState::kRaw;
};

// Outcome of flattening, composed worst-case across AIDs: the largest
// magnitude count adjustment and the largest adjusted noise sd. The noise
// AIDV set belongs to the AID that supplied the sd.
struct FlatteningResult {
  bool all_low_count = false;  // every AID hit the QH low-count sentinel
  double count_adjustment = 0.0;
  double adjusted_sd = 0.0;
  std::vector<Seed> noise_aidv_hashes;
};

// Test-bench knobs; the production path always uses the defaults.
struct PipelineTweaks {
  bool disable_merging = false;
  bool zero_noise = false;
};

struct AnswerRow {
  std::vector<BucketValue> values;
  int64_t count = 0;
};

struct Answer {
  std::vector<std::string> column_labels;  // generalization expressions + "count"
  std::vector<AnswerRow> rows;
  bool expand_rows = false;

  std::string to_csv() const;   // header + rows, RFC-4180
  std::string to_json() const;  // {"columns": [...], "rows": [...]}
};

// QH step 2: one bucket per distinct generalized value tuple, with per-AID
// AIDV sets and contributions. For count(DISTINCT aid) every AIDV of that AID
// contributes one row. Returns buckets sorted by value tuple.
std::vector<Bucket> aggregate_buckets(const Table& table, const QueryPlan& plan);

// QH step 3: per AID, a sticky Gaussian threshold
// max(low_thresh, low_thresh + low_mean_gap + noise); the bucket is
// suppressed when its distinct-AIDV count falls below the threshold for any
// AID.
bool suppress_bucket(const Bucket& bucket, const AnonParams& params, const Salt& salt,
                     const PipelineTweaks& tweaks = {});

// QH step 4: folds each suppressed bucket into its unique kept sibling (one
// group-by column dropped) when no other suppressed bucket shares that
// sibling set. States must be kKept/kSuppressed on entry; recipients absorb
// rows and AIDVs, merged buckets become kMergedAway.
void merge_suppressed(std::vector<Bucket>* buckets, const QueryPlan& plan);

// The anonymized total-suppression bucket: the union of at least two
// suppressed (non-merged) buckets under all-"*" values. The caller runs it
// through the normal suppress/flatten/noise steps.
std::optional<Bucket> total_suppression_bucket(const std::vector<Bucket>& buckets,
                                               const QueryPlan& plan);

// QH step 5 for one AID; exposed for tests.
struct AidFlattening {
  bool low_count = false;
  double count_adjustment = 0.0;
  double adjusted_sd = 0.0;
};
AidFlattening flatten_one_aid(const PerAidStats& stats, const AnonParams& params,
                              const Salt& salt);

// QH step 5 with worst-case cross-AID composition.
FlatteningResult flatten_bucket(const Bucket& bucket, const AnonParams& params,
                                const Salt& salt);

// Per-position gb_sql hashes for the bucket's sql noise layer. The range
// descriptor is omitted for ungeneralized columns and for
// floor/ceiling/round with K=1 on integer columns.
std::vector<Seed> bucket_gb_hashes(const QueryPlan& plan,
                                   const std::vector<ColumnDef>& schema,
                                   const std::vector<BucketValue>& values);

// QH step 6: two noise layers of sd adjusted_sd/sqrt(2), one seeded from the
// AIDV set and one from the SQL descriptors; the rounded noisy count is
// clamped below at low_thresh.
int64_t add_noise(const Bucket& bucket, const FlatteningResult& flat,
                  const QueryPlan& plan, const std::vector<ColumnDef>& schema,
                  const AnonParams& params, const Salt& salt,
                  const PipelineTweaks& tweaks = {});

// The full pipeline. count(DISTINCT col) on a non-AID column dispatches to
// the distinct-count pipeline. Released rows are sorted by value tuple; the
// total-suppression row, when present, comes last.
Answer answer(const Table& table, const QueryPlan& plan, const AnonParams& params,
              const Salt& salt, const PipelineTweaks& tweaks = {});

// Parse + normalize + answer.
Answer answer_sql(const Table& table, std::string_view sql, TrustMode mode,
                  const AnonParams& params, const Salt& salt,
                  const PipelineTweaks& tweaks = {});

}  // namespace anonq

#endif  // ANONQ_ANONYMIZER_HPP
