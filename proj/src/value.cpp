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

#include "anonq/value.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "anonq/error.hpp"

namespace anonq {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSyntaxError: return "SyntaxError";
    case ErrorCode::kForbiddenFeature: return "ForbiddenFeature";
    case ErrorCode::kUnknownColumn: return "UnknownColumn";
    case ErrorCode::kTypeMismatch: return "TypeMismatch";
    case ErrorCode::kUntrustedConstraint: return "UntrustedConstraint";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kSchemaMismatch: return "SchemaMismatch";
    case ErrorCode::kTypeParseError: return "TypeParseError";
    case ErrorCode::kNullAid: return "NullAid";
    case ErrorCode::kMissingAid: return "MissingAid";
    case ErrorCode::kAidAlreadyConfigured: return "AidAlreadyConfigured";
    case ErrorCode::kEntropyUnavailable: return "EntropyUnavailable";
    case ErrorCode::kSaltMismatch: return "SaltMismatch";
    case ErrorCode::kInvalidParams: return "InvalidParams";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kBaselineOne: return "BaselineOne";
    case ErrorCode::kInternal: return "Internal";
  }
  return "Unknown";
}

const char* column_type_name(ColumnType type) {
  switch (type) {
    case ColumnType::kInteger: return "integer";
    case ColumnType::kReal: return "real";
    case ColumnType::kText: return "text";
    case ColumnType::kDate: return "date";
    case ColumnType::kTime: return "time";
    case ColumnType::kDateTime: return "datetime";
  }
  return "unknown";
}

std::optional<ColumnType> column_type_from_name(const std::string& name) {
  if (name == "integer" || name == "int") return ColumnType::kInteger;
  if (name == "real" || name == "float" || name == "double") return ColumnType::kReal;
  if (name == "text" || name == "string") return ColumnType::kText;
  if (name == "date") return ColumnType::kDate;
  if (name == "time") return ColumnType::kTime;
  if (name == "datetime" || name == "timestamp") return ColumnType::kDateTime;
  return std::nullopt;
}

bool is_numeric(ColumnType type) {
  return type == ColumnType::kInteger || type == ColumnType::kReal;
}

bool is_temporal(ColumnType type) {
  return type == ColumnType::kDate || type == ColumnType::kTime ||
         type == ColumnType::kDateTime;
}

std::string render_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  (void)ec;
  return std::string(buf, ptr);
}

namespace {

std::string render_date(const Date& d) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", d.year, d.month, d.day);
  return buf;
}

std::string render_time(const TimeOfDay& t) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%02d:%02d:%02d", t.hour, t.minute, t.second);
  return buf;
}

bool parse_int_field(const char* s, int len, int* out) {
  int v = 0;
  for (int i = 0; i < len; ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
    v = v * 10 + (s[i] - '0');
  }
  *out = v;
  return true;
}

bool parse_date_text(const std::string& s, Date* out) {
  // YYYY-MM-DD
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
  Date d;
  if (!parse_int_field(s.data(), 4, &d.year) ||
      !parse_int_field(s.data() + 5, 2, &d.month) ||
      !parse_int_field(s.data() + 8, 2, &d.day))
    return false;
  if (d.month < 1 || d.month > 12 || d.day < 1 || d.day > 31) return false;
  *out = d;
  return true;
}

bool parse_time_text(const std::string& s, TimeOfDay* out) {
  // HH:MM:SS
  if (s.size() != 8 || s[2] != ':' || s[5] != ':') return false;
  TimeOfDay t;
  if (!parse_int_field(s.data(), 2, &t.hour) ||
      !parse_int_field(s.data() + 3, 2, &t.minute) ||
      !parse_int_field(s.data() + 6, 2, &t.second))
    return false;
  if (t.hour > 23 || t.minute > 59 || t.second > 59) return false;
  *out = t;
  return true;
}

bool parse_datetime_text(const std::string& s, DateTime* out) {
  // YYYY-MM-DD HH:MM:SS, with ' ' or 'T' separator; bare date also accepted.
  DateTime dt;
  if (parse_date_text(s, &dt.date)) {
    *out = dt;
    return true;
  }
  if (s.size() != 19 || (s[10] != ' ' && s[10] != 'T')) return false;
  if (!parse_date_text(s.substr(0, 10), &dt.date)) return false;
  if (!parse_time_text(s.substr(11), &dt.time)) return false;
  *out = dt;
  return true;
}

}  // namespace

std::string canonical_render(const Value& v) {
  struct Renderer {
    std::string operator()(std::monostate) const { return std::string("\0NULL", 5); }
    std::string operator()(int64_t x) const { return std::to_string(x); }
    std::string operator()(double x) const { return render_double(x); }
    std::string operator()(const std::string& s) const { return s; }
    std::string operator()(const Date& d) const { return render_date(d); }
    std::string operator()(const TimeOfDay& t) const { return render_time(t); }
    std::string operator()(const DateTime& dt) const {
      return render_date(dt.date) + " " + render_time(dt.time);
    }
  };
  return std::visit(Renderer{}, v);
}

Value parse_value(const std::string& text, ColumnType type) {
  if (text.empty()) return std::monostate{};
  auto fail = [&]() -> Value {
    throw Error(ErrorCode::kTypeParseError,
                "cannot parse '" + text + "' as " + column_type_name(type));
  };
  switch (type) {
    case ColumnType::kInteger: {
      int64_t v = 0;
      auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
      if (ec != std::errc() || ptr != text.data() + text.size()) return fail();
      return v;
    }
    case ColumnType::kReal: {
      char* end = nullptr;
      double v = std::strtod(text.c_str(), &end);
      if (end != text.c_str() + text.size() || !std::isfinite(v)) return fail();
      return v;
    }
    case ColumnType::kText:
      return text;
    case ColumnType::kDate: {
      Date d;
      if (!parse_date_text(text, &d)) return fail();
      return d;
    }
    case ColumnType::kTime: {
      TimeOfDay t;
      if (!parse_time_text(text, &t)) return fail();
      return t;
    }
    case ColumnType::kDateTime: {
      DateTime dt;
      if (!parse_datetime_text(text, &dt)) return fail();
      return dt;
    }
  }
  return fail();
}

std::strong_ordering compare_values(const Value& a, const Value& b) {
  auto group = [](const Value& v) -> int {
    switch (v.index()) {
      case 0: return 0;             // null
      case 1: case 2: return 1;     // numeric
      case 3: return 2;             // text
      case 4: return 3;             // date
      case 5: return 4;             // time
      case 6: return 5;             // datetime
    }
    return 6;
  };
  int ga = group(a), gb = group(b);
  if (ga != gb) return ga <=> gb;
  switch (ga) {
    case 0:
      return std::strong_ordering::equal;
    case 1: {
      double xa = std::holds_alternative<int64_t>(a)
                      ? static_cast<double>(std::get<int64_t>(a))
                      : std::get<double>(a);
      double xb = std::holds_alternative<int64_t>(b)
                      ? static_cast<double>(std::get<int64_t>(b))
                      : std::get<double>(b);
      if (xa < xb) return std::strong_ordering::less;
      if (xa > xb) return std::strong_ordering::greater;
      return std::strong_ordering::equal;
    }
    case 2:
      return std::get<std::string>(a) <=> std::get<std::string>(b);
    case 3:
      return std::get<Date>(a) <=> std::get<Date>(b);
    case 4:
      return std::get<TimeOfDay>(a) <=> std::get<TimeOfDay>(b);
    case 5:
      return std::get<DateTime>(a) <=> std::get<DateTime>(b);
  }
  return std::strong_ordering::equal;
}

}  // namespace anonq
