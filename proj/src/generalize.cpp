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

#include "anonq/generalize.hpp"

#include <cmath>

#include "anonq/error.hpp"

namespace anonq {

namespace {

double numeric_of(const Value& v) {
  if (std::holds_alternative<int64_t>(v))
    return static_cast<double>(std::get<int64_t>(v));
  return std::get<double>(v);
}

// Result of a width function on an integer column stays an integer value
// when it is integral, so that e.g. floor(age/1)*1 renders exactly like the
// raw value.
Value numeric_result(double x, ColumnType column_type) {
  if (column_type == ColumnType::kInteger && std::nearbyint(x) == x &&
      std::abs(x) < 9.0e15) {
    return static_cast<int64_t>(x);
  }
  return x;
}

// Code-point aware substring: characters [offset, offset+length), 1-based,
// clipped at the end of the string. May be empty.
std::string utf8_substring(const std::string& s, int64_t offset, int64_t length) {
  auto is_continuation = [](char c) { return (static_cast<unsigned char>(c) & 0xC0) == 0x80; };
  size_t i = 0;
  int64_t skipped = 0;
  while (i < s.size() && skipped < offset - 1) {
    ++i;
    while (i < s.size() && is_continuation(s[i])) ++i;
    ++skipped;
  }
  size_t start = i;
  int64_t taken = 0;
  while (i < s.size() && taken < length) {
    ++i;
    while (i < s.size() && is_continuation(s[i])) ++i;
    ++taken;
  }
  return s.substr(start, i - start);
}

Date truncate_date(const Date& d, DateTruncPeriod period) {
  Date out = d;
  switch (period) {
    case DateTruncPeriod::kYear:
      out.month = 1;
      out.day = 1;
      break;
    case DateTruncPeriod::kQuarter:
      out.month = 1 + 3 * ((d.month - 1) / 3);
      out.day = 1;
      break;
    case DateTruncPeriod::kMonth:
      out.day = 1;
      break;
    default:
      break;
  }
  return out;
}

TimeOfDay truncate_time(const TimeOfDay& t, DateTruncPeriod period) {
  TimeOfDay out = t;
  switch (period) {
    case DateTruncPeriod::kHour:
      out.minute = 0;
      out.second = 0;
      break;
    case DateTruncPeriod::kMinute:
      out.second = 0;
      break;
    case DateTruncPeriod::kSecond:
      break;
    default:
      // Calendar periods reset the whole time-of-day.
      out = TimeOfDay{};
      break;
  }
  return out;
}

}  // namespace

std::string BucketValue::seed_render() const {
  switch (kind) {
    case Kind::kRegular:
      return canonical_render(value);
    case Kind::kBelow:
      return std::string("\0BELOW", 6);
    case Kind::kAbove:
      return std::string("\0ABOVE", 6);
    case Kind::kWildcard:
      return "*";
  }
  return "";
}

std::string BucketValue::output_render() const {
  switch (kind) {
    case Kind::kRegular:
      return is_null(value) ? "" : canonical_render(value);
    case Kind::kBelow:
      return "below";
    case Kind::kAbove:
      return "above";
    case Kind::kWildcard:
      return "*";
  }
  return "";
}

BucketValue apply_generalization(const GeneralizationSpec& spec, const Value& value,
                                 ColumnType column_type) {
  if (is_null(value)) return BucketValue::regular(std::monostate{});

  switch (spec.function) {
    case GenFunction::kNone:
      return BucketValue::regular(value);

    case GenFunction::kFloor: {
      double v = numeric_of(value);
      return BucketValue::regular(
          numeric_result(spec.width * std::floor(v / spec.width), column_type));
    }
    case GenFunction::kCeiling: {
      double v = numeric_of(value);
      return BucketValue::regular(
          numeric_result(spec.width * std::ceil(v / spec.width), column_type));
    }
    case GenFunction::kRound: {
      // std::round is half-away-from-zero by definition.
      double v = numeric_of(value);
      return BucketValue::regular(
          numeric_result(spec.width * std::round(v / spec.width), column_type));
    }
    case GenFunction::kBucketWidth: {
      double v = numeric_of(value);
      if (v < spec.low) return BucketValue::below();
      if (v >= spec.high) return BucketValue::above();
      double w = (spec.high - spec.low) / static_cast<double>(spec.bin_count);
      double bin = std::floor((v - spec.low) / w);
      // Guard the upper edge against floating rounding.
      if (bin >= static_cast<double>(spec.bin_count))
        bin = static_cast<double>(spec.bin_count - 1);
      return BucketValue::regular(spec.low + w * bin);
    }
    case GenFunction::kSubstring:
      return BucketValue::regular(
          utf8_substring(std::get<std::string>(value), spec.offset, spec.length));

    case GenFunction::kDateTrunc: {
      if (std::holds_alternative<Date>(value))
        return BucketValue::regular(truncate_date(std::get<Date>(value), spec.period));
      if (std::holds_alternative<TimeOfDay>(value))
        return BucketValue::regular(
            truncate_time(std::get<TimeOfDay>(value), spec.period));
      DateTime dt = std::get<DateTime>(value);
      dt.date = truncate_date(dt.date, spec.period);
      dt.time = truncate_time(dt.time, spec.period);
      return BucketValue::regular(dt);
    }
  }
  throw Error(ErrorCode::kInternal, "unhandled generalization");
}

}  // namespace anonq
