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
// Parser and validator for the restricted dialect: SELECT, FROM and GROUP BY
// only, three count aggregates, and a fixed set of generalization functions.

#ifndef ANONQ_SQL_HPP
#define ANONQ_SQL_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "anonq/table.hpp"
#include "anonq/value.hpp"

namespace anonq {

enum class TrustMode { kTrusted, kUntrusted };

enum class GenFunction {
  kNone,
  kFloor,
  kCeiling,
  kRound,
  kBucketWidth,
  kSubstring,
  kDateTrunc,
};

enum class DateTruncPeriod { kYear, kQuarter, kMonth, kDay, kHour, kMinute, kSecond };

const char* gen_function_name(GenFunction f);
const char* date_trunc_period_name(DateTruncPeriod p);

struct GeneralizationSpec {
  GenFunction function = GenFunction::kNone;

  // floor / ceiling / round: width K > 0 plus the literal as written, for the
  // exact decimal money-set membership test in untrusted mode.
  double width = 0.0;
  std::string width_literal;

  // bucket_width(col, L, H, C)
  double low = 0.0;
  double high = 0.0;
  int64_t bin_count = 0;

  // substring(col FROM O FOR L), 1-based offset
  int64_t offset = 1;
  int64_t length = 0;

  DateTruncPeriod period = DateTruncPeriod::kYear;

  bool operator==(const GeneralizationSpec& other) const;
};

struct SelectedColumn {
  std::string column;  // lower-cased
  GeneralizationSpec spec;

  bool operator==(const SelectedColumn& other) const {
    return column == other.column && spec == other.spec;
  }
};

enum class AggregateKind { kCountStar, kCountColumn, kCountDistinct };

struct QueryPlan {
  std::string table_name;
  std::vector<SelectedColumn> group_by;  // in SELECT-list order
  AggregateKind aggregate = AggregateKind::kCountStar;
  std::string aggregate_column;  // count(col) / count(DISTINCT col)
  TrustMode trust_mode = TrustMode::kTrusted;

  // Set during normalization of aggregate-free SELECTs: each released bucket
  // is listed once per counted row, without a count column.
  bool expand_rows = false;

  // True for the raw parse of an aggregate-free SELECT, before normalize().
  bool has_aggregate = true;

  // Canonical rendering; parsing it again yields an identical plan.
  std::string to_sql() const;

  bool operator==(const QueryPlan& other) const;
};

// Parses and validates a query against the schema. GROUP BY may reference
// select expressions by ordinal or by repetition and must cover the
// non-aggregate select list exactly. Throws Error with kSyntaxError,
// kForbiddenFeature, kUnknownColumn, kTypeMismatch or kUntrustedConstraint.
QueryPlan parse_query(std::string_view sql, TrustMode mode,
                      const std::vector<ColumnDef>& schema);

// Untrusted-analyst constraints for one generalization: floor/round widths
// restricted to the 1-2-5 decimal set, ceiling and bucket_width rejected,
// substring offset must be 1. Throws kUntrustedConstraint.
void validate_ua(const GeneralizationSpec& spec);

// Gives an aggregate-free SELECT its implicit count(*) and row expansion.
QueryPlan normalize(QueryPlan plan);

// parse_query + normalize.
QueryPlan compile_query(std::string_view sql, TrustMode mode,
                        const std::vector<ColumnDef>& schema);

// Exact decimal membership in {1,2,5} * 10^n for n in [-6, 9].
bool is_money_style_literal(const std::string& literal);

// Canonical rendering of one select expression ("floor(age / 10) * 10").
std::string render_column_expr(const SelectedColumn& col);

}  // namespace anonq

#endif  // ANONQ_SQL_HPP
