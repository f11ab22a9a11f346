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

#include "anonq/table.hpp"

#include <openssl/evp.h>
#include <openssl/rand.h>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "anonq/error.hpp"
#include "anonq/params.hpp"

namespace anonq {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

// RFC-4180 field splitting: quoted fields may contain commas, escaped quotes
// ("") and newlines. Returns one record per call, or false at end of input.
bool next_record(const std::string& text, size_t& pos, std::vector<std::string>* out) {
  out->clear();
  if (pos >= text.size()) return false;
  std::string field;
  bool in_quotes = false;
  bool any = false;
  while (pos < text.size()) {
    char c = text[pos];
    if (in_quotes) {
      if (c == '"') {
        if (pos + 1 < text.size() && text[pos + 1] == '"') {
          field += '"';
          pos += 2;
        } else {
          in_quotes = false;
          ++pos;
        }
      } else {
        field += c;
        ++pos;
      }
      any = true;
      continue;
    }
    if (c == '"') {
      in_quotes = true;
      any = true;
      ++pos;
    } else if (c == ',') {
      out->push_back(std::move(field));
      field.clear();
      any = true;
      ++pos;
    } else if (c == '\r' && pos + 1 < text.size() && text[pos + 1] == '\n') {
      pos += 2;
      break;
    } else if (c == '\n') {
      ++pos;
      break;
    } else {
      field += c;
      any = true;
      ++pos;
    }
  }
  if (in_quotes) throw Error(ErrorCode::kIoError, "unterminated quoted CSV field");
  if (!any && out->empty()) return false;  // trailing newline
  out->push_back(std::move(field));
  return true;
}

Salt full_sha256(const std::string& buffer) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int digest_len = 0;
  if (EVP_Digest(buffer.data(), buffer.size(), digest, &digest_len, EVP_sha256(),
                 nullptr) != 1) {
    throw Error(ErrorCode::kInternal, "SHA-256 digest failed");
  }
  return Salt(digest, digest + digest_len);
}

}  // namespace

void AnonParams::validate() const {
  auto reject = [](const std::string& what) {
    throw Error(ErrorCode::kInvalidParams, what);
  };
  if (low_thresh < 2) reject("low_thresh must be >= 2");
  if (supp_sd < 1.0) reject("supp_sd must be >= 1.0");
  if (low_mean_gap < 2.0) reject("low_mean_gap must be >= 2");
  if (base_sd < 1.5) reject("base_sd must be >= 1.5");
  if (outlier_range.first < 1) reject("outlier_range min must be >= 1");
  if (outlier_range.second < 2) reject("outlier_range max must be >= 2");
  if (outlier_range.second <= outlier_range.first)
    reject("outlier_range max must be > min");
  if (top_range.first < 2) reject("top_range min must be >= 2");
  if (top_range.second < 3) reject("top_range max must be >= 3");
  if (top_range.second <= top_range.first) reject("top_range max must be > min");
}

AnonParams AnonParams::private_default() { return AnonParams{}; }

AnonParams AnonParams::extra_private() {
  AnonParams p;
  p.supp_sd = 1.5;
  p.low_mean_gap = 3.0;
  p.base_sd = 2.25;
  return p;
}

AnonParams AnonParams::extra_extra_private() {
  AnonParams p;
  p.supp_sd = 2.0;
  p.low_mean_gap = 4.0;
  p.base_sd = 3.0;
  return p;
}

namespace {

void check_row_shapes(const std::vector<ColumnDef>& columns,
                      const std::vector<std::vector<Value>>& rows) {
  for (size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != columns.size())
      throw Error(ErrorCode::kSchemaMismatch,
                  "row " + std::to_string(r) + " has wrong number of values");
  }
}

}  // namespace

Table::Table(std::vector<ColumnDef> columns, std::vector<std::vector<Value>> rows,
             std::vector<std::string> aid_columns, ChangePolicy policy) {
  columns_ = std::move(columns);
  rows_ = std::move(rows);
  aid_columns_ = std::move(aid_columns);
  policy_ = policy;
  if (aid_columns_.empty())
    throw Error(ErrorCode::kMissingAid, "at least one AID column is required");
  check_row_shapes(columns_, rows_);
  for (const auto& aid : aid_columns_) {
    int idx = column_index(aid);
    if (idx < 0)
      throw Error(ErrorCode::kSchemaMismatch, "AID column '" + aid + "' not in schema");
    for (size_t r = 0; r < rows_.size(); ++r) {
      if (is_null(rows_[r][idx]))
        throw Error(ErrorCode::kNullAid,
                    "null AID value in row " + std::to_string(r));
    }
  }
}

Table Table::unidentified(std::vector<ColumnDef> columns,
                          std::vector<std::vector<Value>> rows, ChangePolicy policy) {
  check_row_shapes(columns, rows);
  Table t;
  t.columns_ = std::move(columns);
  t.rows_ = std::move(rows);
  t.policy_ = policy;
  return t;
}

int Table::column_index(const std::string& name) const {
  std::string want = lower(name);
  for (size_t i = 0; i < columns_.size(); ++i) {
    if (lower(columns_[i].name) == want) return static_cast<int>(i);
  }
  return -1;
}

Table synthesize_row_aid(const Table& table) {
  if (!table.aid_columns().empty())
    throw Error(ErrorCode::kAidAlreadyConfigured,
                "table already has AID columns configured");
  std::vector<ColumnDef> columns = table.columns();
  columns.push_back({"__row_aid", ColumnType::kText});
  std::vector<std::vector<Value>> rows = table.rows();
  for (size_t r = 0; r < rows.size(); ++r) rows[r].push_back(std::to_string(r));
  return Table(std::move(columns), std::move(rows), {"__row_aid"},
               table.change_policy());
}

namespace {

std::vector<std::vector<Value>> parse_csv_rows(const std::string& text,
                                               const std::vector<ColumnDef>& schema) {
  size_t pos = 0;
  std::vector<std::string> record;
  if (!next_record(text, pos, &record))
    throw Error(ErrorCode::kSchemaMismatch, "missing CSV header row");
  if (record.size() != schema.size())
    throw Error(ErrorCode::kSchemaMismatch,
                "header has " + std::to_string(record.size()) + " columns, schema has " +
                    std::to_string(schema.size()));
  for (size_t i = 0; i < schema.size(); ++i) {
    if (lower(record[i]) != lower(schema[i].name))
      throw Error(ErrorCode::kSchemaMismatch,
                  "header column '" + record[i] + "' does not match schema column '" +
                      schema[i].name + "'");
  }

  std::vector<std::vector<Value>> rows;
  size_t row_index = 0;
  while (next_record(text, pos, &record)) {
    if (record.size() != schema.size())
      throw Error(ErrorCode::kSchemaMismatch,
                  "row " + std::to_string(row_index) + " has " +
                      std::to_string(record.size()) + " fields");
    std::vector<Value> row;
    row.reserve(schema.size());
    for (size_t i = 0; i < schema.size(); ++i) {
      try {
        row.push_back(parse_value(record[i], schema[i].type));
      } catch (const Error&) {
        throw Error(ErrorCode::kTypeParseError,
                    "row " + std::to_string(row_index) + ", column '" +
                        schema[i].name + "': cannot parse '" + record[i] + "' as " +
                        column_type_name(schema[i].type));
      }
    }
    rows.push_back(std::move(row));
    ++row_index;
  }
  return rows;
}

}  // namespace

Table load_csv_text(const std::string& text, const std::vector<ColumnDef>& schema,
                    const std::vector<std::string>& aid_columns, ChangePolicy policy) {
  if (aid_columns.empty())
    throw Error(ErrorCode::kMissingAid,
                "no AID columns declared; synthesize a row AID for "
                "one-row-per-entity tables");
  for (const auto& aid : aid_columns) {
    if (lower(aid) == "__row_aid")
      throw Error(ErrorCode::kAidAlreadyConfigured,
                  "'__row_aid' is reserved for the synthesized AID");
  }
  return Table(schema, parse_csv_rows(text, schema), aid_columns, policy);
}

Table load_csv(const std::string& path, const std::vector<ColumnDef>& schema,
               const std::vector<std::string>& aid_columns, ChangePolicy policy) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_csv_text(buf.str(), schema, aid_columns, policy);
}

Table load_csv_unidentified(const std::string& path,
                            const std::vector<ColumnDef>& schema,
                            ChangePolicy policy) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  return Table::unidentified(schema, parse_csv_rows(text, schema), policy);
}

Salt derive_salt_table(const Table& table) {
  // XOR of per-cell hashes, then a one-way hash of the accumulator. The XOR
  // makes the salt independent of row and column order.
  Seed acc;
  for (const auto& row : table.rows()) {
    for (const auto& cell : row) {
      acc = xor_seeds(acc, hash_components({canonical_render(cell)}));
    }
  }
  std::string material(reinterpret_cast<const char*>(acc.bytes.data()),
                       acc.bytes.size());
  return full_sha256(material);
}

Salt derive_salt_bytes(std::string_view bytes) {
  return full_sha256(std::string(bytes));
}

Salt derive_salt_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return derive_salt_bytes(buf.str());
}

Salt generate_salt_random() {
  Salt salt(32);
  if (RAND_bytes(salt.data(), static_cast<int>(salt.size())) != 1)
    throw Error(ErrorCode::kEntropyUnavailable, "CSPRNG unavailable");
  return salt;
}

void write_salt_file(const std::string& path, const Salt& salt) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write '" + path + "'");
  out.write(reinterpret_cast<const char*>(salt.data()),
            static_cast<std::streamsize>(salt.size()));
  if (!out) throw Error(ErrorCode::kIoError, "short write to '" + path + "'");
}

Salt read_salt_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrorCode::kIoError,
                "salt sidecar '" + path + "' is missing; it is never regenerated");
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string bytes = buf.str();
  if (bytes.size() < 16)
    throw Error(ErrorCode::kIoError, "salt sidecar '" + path + "' is too short");
  return Salt(bytes.begin(), bytes.end());
}

}  // namespace anonq
