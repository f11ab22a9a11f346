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

#include "anonq/sql.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <unordered_set>

#include "anonq/error.hpp"

namespace anonq {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

// SQL keywords that exist in the wider language but are rejected here. Seeing
// one is a ForbiddenFeature rather than a plain syntax error.
const std::unordered_set<std::string>& forbidden_keywords() {
  static const std::unordered_set<std::string> kSet = {
      "where",  "join",   "inner",   "left",    "right",  "outer", "cross",
      "having", "order",  "limit",   "offset",  "union",  "all",   "intersect",
      "except", "and",    "or",      "not",     "on",     "as",    "case",
      "cast",   "between","in",      "like",    "with",   "over",  "window",
      "sum",    "avg",    "min",     "max",     "stddev", "update", "insert",
      "delete", "drop",   "create",  "alter",   "values",
  };
  return kSet;
}

struct Token {
  enum class Kind { kIdent, kNumber, kString, kPunct, kEnd };
  Kind kind = Kind::kEnd;
  std::string text;        // identifiers lower-cased; strings unquoted
  std::string raw;         // as written (number literals keep their form)
  size_t position = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view sql) : sql_(sql) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < sql_.size() && std::isspace(static_cast<unsigned char>(sql_[pos_])))
      ++pos_;
    current_ = Token{};
    current_.position = pos_;
    if (pos_ >= sql_.size()) {
      current_.kind = Token::Kind::kEnd;
      return;
    }
    char c = sql_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < sql_.size() &&
             (std::isalnum(static_cast<unsigned char>(sql_[pos_])) || sql_[pos_] == '_'))
        ++pos_;
      current_.kind = Token::Kind::kIdent;
      current_.raw = std::string(sql_.substr(start, pos_ - start));
      current_.text = lower(current_.raw);
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && pos_ + 1 < sql_.size() &&
         std::isdigit(static_cast<unsigned char>(sql_[pos_ + 1])))) {
      size_t start = pos_;
      while (pos_ < sql_.size() &&
             (std::isdigit(static_cast<unsigned char>(sql_[pos_])) || sql_[pos_] == '.'))
        ++pos_;
      // optional exponent
      if (pos_ < sql_.size() && (sql_[pos_] == 'e' || sql_[pos_] == 'E')) {
        size_t mark = pos_;
        ++pos_;
        if (pos_ < sql_.size() && (sql_[pos_] == '+' || sql_[pos_] == '-')) ++pos_;
        if (pos_ < sql_.size() && std::isdigit(static_cast<unsigned char>(sql_[pos_]))) {
          while (pos_ < sql_.size() &&
                 std::isdigit(static_cast<unsigned char>(sql_[pos_])))
            ++pos_;
        } else {
          pos_ = mark;  // bare 'e' belongs to the next token
        }
      }
      current_.kind = Token::Kind::kNumber;
      current_.raw = std::string(sql_.substr(start, pos_ - start));
      current_.text = current_.raw;
      return;
    }
    if (c == '\'') {
      ++pos_;
      std::string out;
      while (pos_ < sql_.size()) {
        if (sql_[pos_] == '\'') {
          if (pos_ + 1 < sql_.size() && sql_[pos_ + 1] == '\'') {
            out += '\'';
            pos_ += 2;
            continue;
          }
          ++pos_;
          current_.kind = Token::Kind::kString;
          current_.text = out;
          current_.raw = out;
          return;
        }
        out += sql_[pos_++];
      }
      throw Error(ErrorCode::kSyntaxError, "unterminated string literal");
    }
    static const std::string kPunct = "(),*/=+-<>;.%|&[]";
    if (kPunct.find(c) != std::string::npos) {
      current_.kind = Token::Kind::kPunct;
      current_.text = std::string(1, c);
      current_.raw = current_.text;
      ++pos_;
      return;
    }
    throw Error(ErrorCode::kSyntaxError,
                std::string("unexpected character '") + c + "'");
  }

  std::string_view sql_;
  size_t pos_ = 0;
  Token current_;
};

[[noreturn]] void forbidden(const std::string& what) {
  throw Error(ErrorCode::kForbiddenFeature, what);
}

[[noreturn]] void syntax(const std::string& what) {
  throw Error(ErrorCode::kSyntaxError, what);
}

class Parser {
 public:
  Parser(std::string_view sql, TrustMode mode, const std::vector<ColumnDef>& schema)
      : lexer_(sql), mode_(mode), schema_(schema) {}

  QueryPlan parse() {
    expect_keyword("select");

    std::vector<SelectedColumn> selected;
    std::optional<AggregateKind> aggregate;
    std::string aggregate_column;

    while (true) {
      if (is_keyword("count")) {
        if (aggregate) forbidden("only one count aggregate is allowed");
        parse_aggregate(&aggregate, &aggregate_column);
      } else {
        SelectedColumn col = parse_col_expr();
        for (const auto& existing : selected) {
          if (existing == col)
            syntax("duplicate select expression '" + render_expr(col) + "'");
        }
        selected.push_back(std::move(col));
      }
      if (accept_punct(",")) continue;
      break;
    }

    expect_keyword("from");
    Token table = lexer_.take();
    if (table.kind != Token::Kind::kIdent || is_forbidden_word(table.text))
      syntax("expected table name after FROM");
    if (table.text == "select") forbidden("sub-query");

    std::vector<size_t> covered;
    bool has_group_by = false;
    if (is_keyword("group")) {
      lexer_.take();
      expect_keyword("by");
      has_group_by = true;
      covered = parse_group_by_list(selected);
    }

    const Token& trailing = lexer_.peek();
    if (trailing.kind != Token::Kind::kEnd) {
      if (trailing.kind == Token::Kind::kPunct && trailing.text == ";") {
        lexer_.take();
        if (lexer_.peek().kind != Token::Kind::kEnd)
          forbidden("multiple statements");
      } else if (trailing.kind == Token::Kind::kIdent &&
                 is_forbidden_word(trailing.text)) {
        forbidden("keyword '" + trailing.text + "' is not supported");
      } else {
        syntax("unexpected input after query: '" + trailing.raw + "'");
      }
    }

    if (aggregate) {
      // Explicit aggregate: GROUP BY must cover the selected expressions
      // exactly (and must be absent when nothing is selected).
      if (!selected.empty()) {
        if (!has_group_by)
          syntax("selected columns require a GROUP BY covering them");
        check_full_coverage(covered, selected.size());
      } else if (has_group_by) {
        syntax("GROUP BY without selected columns");
      }
    } else {
      if (selected.empty()) syntax("empty select list");
      if (has_group_by)
        syntax("GROUP BY requires a count aggregate in the select list");
    }

    QueryPlan plan;
    plan.table_name = table.text;
    plan.group_by = std::move(selected);
    plan.trust_mode = mode_;
    plan.has_aggregate = aggregate.has_value();
    if (aggregate) {
      plan.aggregate = *aggregate;
      plan.aggregate_column = aggregate_column;
    } else {
      plan.aggregate = AggregateKind::kCountStar;
    }

    if (mode_ == TrustMode::kUntrusted) {
      for (const auto& col : plan.group_by) validate_ua(col.spec);
    }
    return plan;
  }

 private:
  bool is_keyword(const std::string& kw) const {
    return lexer_.peek().kind == Token::Kind::kIdent && lexer_.peek().text == kw;
  }

  bool is_forbidden_word(const std::string& word) const {
    return forbidden_keywords().count(word) > 0;
  }

  void expect_keyword(const std::string& kw) {
    const Token& t = lexer_.peek();
    if (t.kind == Token::Kind::kIdent && t.text == kw) {
      lexer_.take();
      return;
    }
    if (t.kind == Token::Kind::kIdent && is_forbidden_word(t.text))
      forbidden("keyword '" + t.text + "' is not supported");
    syntax("expected '" + kw + "'");
  }

  bool accept_punct(const std::string& p) {
    if (lexer_.peek().kind == Token::Kind::kPunct && lexer_.peek().text == p) {
      lexer_.take();
      return true;
    }
    return false;
  }

  void expect_punct(const std::string& p) {
    if (!accept_punct(p)) syntax("expected '" + p + "'");
  }

  Token expect_number() {
    Token t = lexer_.take();
    if (t.kind != Token::Kind::kNumber) syntax("expected a numeric literal");
    return t;
  }

  int64_t expect_integer(const std::string& what) {
    Token t = expect_number();
    if (t.text.find('.') != std::string::npos ||
        t.text.find('e') != std::string::npos ||
        t.text.find('E') != std::string::npos)
      syntax(what + " must be an integer");
    return std::strtoll(t.text.c_str(), nullptr, 10);
  }

  std::string expect_column_name() {
    Token t = lexer_.take();
    if (t.kind != Token::Kind::kIdent) syntax("expected a column name");
    if (is_forbidden_word(t.text)) forbidden("keyword '" + t.text + "' is not supported");
    if (t.text == "select") forbidden("sub-query");
    return t.text;
  }

  ColumnType column_type(const std::string& name) {
    for (const auto& col : schema_) {
      if (lower(col.name) == name) return col.type;
    }
    throw Error(ErrorCode::kUnknownColumn, "unknown column '" + name + "'");
  }

  void parse_aggregate(std::optional<AggregateKind>* aggregate,
                       std::string* aggregate_column) {
    lexer_.take();  // count
    expect_punct("(");
    if (accept_punct("*")) {
      expect_punct(")");
      *aggregate = AggregateKind::kCountStar;
      return;
    }
    if (is_keyword("distinct")) {
      lexer_.take();
      std::string col = expect_column_name();
      column_type(col);
      expect_punct(")");
      *aggregate = AggregateKind::kCountDistinct;
      *aggregate_column = col;
      return;
    }
    std::string col = expect_column_name();
    column_type(col);
    expect_punct(")");
    *aggregate = AggregateKind::kCountColumn;
    *aggregate_column = col;
  }

  void require_numeric(const std::string& column, const char* fn) {
    if (!is_numeric(column_type(column)))
      throw Error(ErrorCode::kTypeMismatch,
                  std::string(fn) + " requires a numeric column, '" + column +
                      "' is " + column_type_name(column_type(column)));
  }

  // floor(col / K) * K and the ceiling/round variants.
  SelectedColumn parse_width_fn(GenFunction fn, const char* name) {
    lexer_.take();
    expect_punct("(");
    std::string column = expect_column_name();
    require_numeric(column, name);
    expect_punct("/");
    Token k_inner = expect_number();
    expect_punct(")");
    expect_punct("*");
    Token k_outer = expect_number();
    double k1 = std::strtod(k_inner.text.c_str(), nullptr);
    double k2 = std::strtod(k_outer.text.c_str(), nullptr);
    if (k1 != k2)
      syntax(std::string(name) + ": divisor and multiplier must match");
    if (!(k1 > 0)) syntax(std::string(name) + ": width K must be positive");
    SelectedColumn out;
    out.column = column;
    out.spec.function = fn;
    out.spec.width = k1;
    out.spec.width_literal = k_inner.raw;
    return out;
  }

  SelectedColumn parse_bucket_width() {
    lexer_.take();
    expect_punct("(");
    std::string column = expect_column_name();
    require_numeric(column, "bucket_width");
    expect_punct(",");
    double low = std::strtod(expect_number().text.c_str(), nullptr);
    expect_punct(",");
    double high = std::strtod(expect_number().text.c_str(), nullptr);
    expect_punct(",");
    int64_t bins = expect_integer("bucket count C");
    expect_punct(")");
    if (!(high > low)) syntax("bucket_width: H must be greater than L");
    if (bins < 1) syntax("bucket_width: C must be a positive integer");
    SelectedColumn out;
    out.column = column;
    out.spec.function = GenFunction::kBucketWidth;
    out.spec.low = low;
    out.spec.high = high;
    out.spec.bin_count = bins;
    return out;
  }

  SelectedColumn parse_substring() {
    lexer_.take();
    expect_punct("(");
    std::string column = expect_column_name();
    if (column_type(column) != ColumnType::kText)
      throw Error(ErrorCode::kTypeMismatch,
                  "substring requires a text column, '" + column + "' is " +
                      column_type_name(column_type(column)));
    int64_t offset = 1;
    bool have_offset = false;
    if (is_keyword("from")) {
      lexer_.take();
      offset = expect_integer("substring offset O");
      have_offset = true;
    }
    if (!is_keyword("for")) {
      syntax(have_offset ? "substring requires a FOR length"
                         : "substring requires FROM and/or FOR");
    }
    lexer_.take();
    int64_t length = expect_integer("substring length L");
    expect_punct(")");
    if (offset < 1) syntax("substring offset O must be >= 1");
    if (length < 1) syntax("substring length L must be >= 1");
    SelectedColumn out;
    out.column = column;
    out.spec.function = GenFunction::kSubstring;
    out.spec.offset = offset;
    out.spec.length = length;
    return out;
  }

  SelectedColumn parse_date_trunc() {
    lexer_.take();
    expect_punct("(");
    Token period = lexer_.take();
    if (period.kind != Token::Kind::kString)
      syntax("date_trunc period must be a quoted string");
    expect_punct(",");
    std::string column = expect_column_name();
    ColumnType type = column_type(column);
    if (!is_temporal(type))
      throw Error(ErrorCode::kTypeMismatch,
                  "date_trunc requires a date, time or datetime column, '" + column +
                      "' is " + column_type_name(type));
    expect_punct(")");

    static const std::pair<const char*, DateTruncPeriod> kPeriods[] = {
        {"year", DateTruncPeriod::kYear},     {"quarter", DateTruncPeriod::kQuarter},
        {"month", DateTruncPeriod::kMonth},   {"day", DateTruncPeriod::kDay},
        {"hour", DateTruncPeriod::kHour},     {"minute", DateTruncPeriod::kMinute},
        {"second", DateTruncPeriod::kSecond},
    };
    std::optional<DateTruncPeriod> parsed;
    for (const auto& [name, value] : kPeriods) {
      if (lower(period.text) == name) parsed = value;
    }
    if (!parsed) syntax("unknown date_trunc period '" + period.text + "'");

    bool date_period = *parsed <= DateTruncPeriod::kDay;
    if (type == ColumnType::kDate && !date_period)
      throw Error(ErrorCode::kTypeMismatch,
                  "date column cannot be truncated to a time-of-day period");
    if (type == ColumnType::kTime && date_period)
      throw Error(ErrorCode::kTypeMismatch,
                  "time column cannot be truncated to a calendar period");

    SelectedColumn out;
    out.column = column;
    out.spec.function = GenFunction::kDateTrunc;
    out.spec.period = *parsed;
    return out;
  }

  SelectedColumn parse_col_expr() {
    const Token& t = lexer_.peek();
    if (t.kind != Token::Kind::kIdent) {
      if (t.kind == Token::Kind::kPunct && t.text == "(") forbidden("sub-expression");
      syntax("expected a column expression");
    }
    if (is_forbidden_word(t.text)) forbidden("keyword '" + t.text + "' is not supported");

    SelectedColumn out;
    if (t.text == "floor") {
      out = parse_width_fn(GenFunction::kFloor, "floor");
    } else if (t.text == "ceiling" || t.text == "ceil") {
      out = parse_width_fn(GenFunction::kCeiling, "ceiling");
    } else if (t.text == "round") {
      out = parse_width_fn(GenFunction::kRound, "round");
    } else if (t.text == "bucket_width") {
      out = parse_bucket_width();
    } else if (t.text == "substring") {
      out = parse_substring();
    } else if (t.text == "date_trunc") {
      out = parse_date_trunc();
    } else {
      Token ident = lexer_.take();
      if (lexer_.peek().kind == Token::Kind::kPunct && lexer_.peek().text == "(")
        forbidden("function '" + ident.text + "' is not supported");
      column_type(ident.text);
      out.column = ident.text;
    }

    // Anything operator-like after a complete expression is arithmetic
    // outside the allowed forms.
    const Token& next = lexer_.peek();
    if (next.kind == Token::Kind::kPunct &&
        (next.text == "+" || next.text == "-" || next.text == "*" ||
         next.text == "/" || next.text == "%" || next.text == "|" || next.text == "&"))
      forbidden("arithmetic expressions are not supported");
    return out;
  }

  std::vector<size_t> parse_group_by_list(const std::vector<SelectedColumn>& selected) {
    std::vector<size_t> covered;
    while (true) {
      size_t index;
      if (lexer_.peek().kind == Token::Kind::kNumber) {
        int64_t ordinal = expect_integer("GROUP BY ordinal");
        if (ordinal < 1 || static_cast<size_t>(ordinal) > selected.size())
          syntax("GROUP BY ordinal " + std::to_string(ordinal) + " out of range");
        index = static_cast<size_t>(ordinal - 1);
      } else {
        SelectedColumn expr = parse_col_expr();
        auto it = std::find(selected.begin(), selected.end(), expr);
        if (it == selected.end())
          syntax("GROUP BY expression '" + render_expr(expr) +
                 "' does not match any selected expression");
        index = static_cast<size_t>(it - selected.begin());
      }
      if (std::find(covered.begin(), covered.end(), index) != covered.end())
        syntax("duplicate GROUP BY entry");
      covered.push_back(index);
      if (!accept_punct(",")) break;
    }
    return covered;
  }

  void check_full_coverage(const std::vector<size_t>& covered, size_t n) {
    if (covered.size() != n)
      syntax("GROUP BY must cover every selected expression exactly once");
  }

  static std::string render_expr(const SelectedColumn& col);

  Lexer lexer_;
  TrustMode mode_;
  const std::vector<ColumnDef>& schema_;
};

std::string render_spec(const std::string& column, const GeneralizationSpec& spec) {
  switch (spec.function) {
    case GenFunction::kNone:
      return column;
    case GenFunction::kFloor:
    case GenFunction::kCeiling:
    case GenFunction::kRound: {
      std::string k = render_double(spec.width);
      return std::string(gen_function_name(spec.function)) + "(" + column + " / " + k +
             ") * " + k;
    }
    case GenFunction::kBucketWidth:
      return "bucket_width(" + column + ", " + render_double(spec.low) + ", " +
             render_double(spec.high) + ", " + std::to_string(spec.bin_count) + ")";
    case GenFunction::kSubstring:
      return "substring(" + column + " FROM " + std::to_string(spec.offset) + " FOR " +
             std::to_string(spec.length) + ")";
    case GenFunction::kDateTrunc:
      return std::string("date_trunc('") + date_trunc_period_name(spec.period) + "', " +
             column + ")";
  }
  return column;
}

std::string Parser::render_expr(const SelectedColumn& col) {
  return render_spec(col.column, col.spec);
}

}  // namespace

const char* gen_function_name(GenFunction f) {
  switch (f) {
    case GenFunction::kNone: return "none";
    case GenFunction::kFloor: return "floor";
    case GenFunction::kCeiling: return "ceiling";
    case GenFunction::kRound: return "round";
    case GenFunction::kBucketWidth: return "bucket_width";
    case GenFunction::kSubstring: return "substring";
    case GenFunction::kDateTrunc: return "date_trunc";
  }
  return "none";
}

const char* date_trunc_period_name(DateTruncPeriod p) {
  switch (p) {
    case DateTruncPeriod::kYear: return "year";
    case DateTruncPeriod::kQuarter: return "quarter";
    case DateTruncPeriod::kMonth: return "month";
    case DateTruncPeriod::kDay: return "day";
    case DateTruncPeriod::kHour: return "hour";
    case DateTruncPeriod::kMinute: return "minute";
    case DateTruncPeriod::kSecond: return "second";
  }
  return "year";
}

bool GeneralizationSpec::operator==(const GeneralizationSpec& other) const {
  if (function != other.function) return false;
  switch (function) {
    case GenFunction::kNone:
      return true;
    case GenFunction::kFloor:
    case GenFunction::kCeiling:
    case GenFunction::kRound:
      return width == other.width;
    case GenFunction::kBucketWidth:
      return low == other.low && high == other.high && bin_count == other.bin_count;
    case GenFunction::kSubstring:
      return offset == other.offset && length == other.length;
    case GenFunction::kDateTrunc:
      return period == other.period;
  }
  return false;
}

bool QueryPlan::operator==(const QueryPlan& other) const {
  return table_name == other.table_name && group_by == other.group_by &&
         aggregate == other.aggregate && aggregate_column == other.aggregate_column &&
         trust_mode == other.trust_mode && expand_rows == other.expand_rows &&
         has_aggregate == other.has_aggregate;
}

std::string QueryPlan::to_sql() const {
  std::string out = "SELECT ";
  for (size_t i = 0; i < group_by.size(); ++i) {
    if (i) out += ", ";
    out += render_spec(group_by[i].column, group_by[i].spec);
  }
  if (!expand_rows && has_aggregate) {
    if (!group_by.empty()) out += ", ";
    switch (aggregate) {
      case AggregateKind::kCountStar:
        out += "count(*)";
        break;
      case AggregateKind::kCountColumn:
        out += "count(" + aggregate_column + ")";
        break;
      case AggregateKind::kCountDistinct:
        out += "count(DISTINCT " + aggregate_column + ")";
        break;
    }
  }
  out += " FROM " + table_name;
  if (!expand_rows && has_aggregate && !group_by.empty()) {
    out += " GROUP BY ";
    for (size_t i = 0; i < group_by.size(); ++i) {
      if (i) out += ", ";
      out += std::to_string(i + 1);
    }
  }
  return out;
}

QueryPlan parse_query(std::string_view sql, TrustMode mode,
                      const std::vector<ColumnDef>& schema) {
  return Parser(sql, mode, schema).parse();
}

void validate_ua(const GeneralizationSpec& spec) {
  switch (spec.function) {
    case GenFunction::kNone:
    case GenFunction::kDateTrunc:
      return;
    case GenFunction::kFloor:
    case GenFunction::kRound:
      if (!is_money_style_literal(spec.width_literal))
        throw Error(ErrorCode::kUntrustedConstraint,
                    "width K=" + spec.width_literal +
                        " is not in the allowed 1-2-5 set for untrusted mode");
      return;
    case GenFunction::kCeiling:
      throw Error(ErrorCode::kUntrustedConstraint,
                  "ceiling is only available in trusted mode");
    case GenFunction::kBucketWidth:
      throw Error(ErrorCode::kUntrustedConstraint,
                  "bucket_width is only available in trusted mode");
    case GenFunction::kSubstring:
      if (spec.offset != 1)
        throw Error(ErrorCode::kUntrustedConstraint,
                    "substring offset O must be 1 in untrusted mode");
      return;
  }
}

QueryPlan normalize(QueryPlan plan) {
  if (!plan.has_aggregate) {
    plan.aggregate = AggregateKind::kCountStar;
    plan.aggregate_column.clear();
    plan.has_aggregate = true;
    plan.expand_rows = true;
  }
  return plan;
}

QueryPlan compile_query(std::string_view sql, TrustMode mode,
                        const std::vector<ColumnDef>& schema) {
  return normalize(parse_query(sql, mode, schema));
}

std::string render_column_expr(const SelectedColumn& col) {
  return render_spec(col.column, col.spec);
}

bool is_money_style_literal(const std::string& literal) {
  // Exact decimal analysis of the literal: exactly one significant digit,
  // which must be 1, 2 or 5, with a decimal exponent in [-6, 9].
  std::string mantissa = literal;
  long exponent = 0;
  size_t e = literal.find_first_of("eE");
  if (e != std::string::npos) {
    mantissa = literal.substr(0, e);
    exponent = std::strtol(literal.c_str() + e + 1, nullptr, 10);
  }
  std::string digits;
  long point = -1;
  for (char c : mantissa) {
    if (c == '.') {
      if (point >= 0) return false;
      point = static_cast<long>(digits.size());
    } else if (c >= '0' && c <= '9') {
      digits += c;
    } else {
      return false;
    }
  }
  if (digits.empty()) return false;
  if (point < 0) point = static_cast<long>(digits.size());

  long sig_index = -1;
  for (size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] == '0') continue;
    if (sig_index >= 0) return false;  // more than one significant digit
    sig_index = static_cast<long>(i);
  }
  if (sig_index < 0) return false;  // zero
  char digit = digits[sig_index];
  if (digit != '1' && digit != '2' && digit != '5') return false;
  long n = (point - 1 - sig_index) + exponent;
  return n >= -6 && n <= 9;
}

}  // namespace anonq
