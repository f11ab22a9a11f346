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

#ifndef ANONQ_VALUE_HPP
#define ANONQ_VALUE_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace anonq {

enum class ColumnType { kInteger, kReal, kText, kDate, kTime, kDateTime };

const char* column_type_name(ColumnType type);
std::optional<ColumnType> column_type_from_name(const std::string& name);

struct Date {
  int year = 0;
  int month = 1;
  int day = 1;
  auto operator<=>(const Date&) const = default;
};

struct TimeOfDay {
  int hour = 0;
  int minute = 0;
  int second = 0;
  auto operator<=>(const TimeOfDay&) const = default;
};

struct DateTime {
  Date date;
  TimeOfDay time;
  auto operator<=>(const DateTime&) const = default;
};

// A single cell. Monostate is SQL NULL.
using Value =
    std::variant<std::monostate, int64_t, double, std::string, Date, TimeOfDay, DateTime>;

inline bool is_null(const Value& v) {
  return std::holds_alternative<std::monostate>(v);
}

bool is_numeric(ColumnType type);
bool is_temporal(ColumnType type);

// Fixed canonical text form used for hashing and output: integers without
// leading zeros, reals in shortest round-trip decimal form, dates and times
// in ISO-8601, text as-is. NULL renders as the reserved token "\0NULL" so it
// cannot collide with any text value.
std::string canonical_render(const Value& v);

// Shortest round-trip rendering of a double ("10", "0.5", "1e+300").
std::string render_double(double x);

// Parses a cell of the given declared type. Empty text is NULL. Throws
// Error(kTypeParseError) on malformed input.
Value parse_value(const std::string& text, ColumnType type);

// Total order across values: NULL first, then by type group, then naturally.
// Integers and reals compare numerically against each other.
std::strong_ordering compare_values(const Value& a, const Value& b);

}  // namespace anonq

#endif  // ANONQ_VALUE_HPP
