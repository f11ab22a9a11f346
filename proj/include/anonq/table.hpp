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

#ifndef ANONQ_TABLE_HPP
#define ANONQ_TABLE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "anonq/seeding.hpp"
#include "anonq/value.hpp"

namespace anonq {

struct ColumnDef {
  std::string name;
  ColumnType type;
};

enum class ChangePolicy { kAppend, kUpdate };

// The single columnar table the engine operates on. Immutable after load;
// an update is modeled as constructing a new Table (and, under the update
// policy, a new content-derived salt).
class Table {
 public:
  // AID values must be non-null; an empty AID list is rejected with
  // kMissingAid (use unidentified() + synthesize_row_aid for
  // one-row-per-entity tables that carry no identifier).
  Table(std::vector<ColumnDef> columns, std::vector<std::vector<Value>> rows,
        std::vector<std::string> aid_columns, ChangePolicy policy);

  // A table without any AID column. Not queryable until an AID is attached.
  static Table unidentified(std::vector<ColumnDef> columns,
                            std::vector<std::vector<Value>> rows,
                            ChangePolicy policy);

  const std::vector<ColumnDef>& columns() const { return columns_; }
  const std::vector<std::vector<Value>>& rows() const { return rows_; }
  const std::vector<std::string>& aid_columns() const { return aid_columns_; }
  ChangePolicy change_policy() const { return policy_; }
  size_t row_count() const { return rows_.size(); }

  // Index of a column by (case-insensitive) name, or -1.
  int column_index(const std::string& name) const;

 private:
  Table() = default;

  std::vector<ColumnDef> columns_;
  std::vector<std::vector<Value>> rows_;
  std::vector<std::string> aid_columns_;
  ChangePolicy policy_ = ChangePolicy::kUpdate;
};

// Adds the "__row_aid" AID column, populated with the 0-based row index as
// text. The caller asserts one row per protected entity. Throws
// kAidAlreadyConfigured when the table already has an AID.
Table synthesize_row_aid(const Table& table);

// Loads an RFC-4180 CSV with a header row matching `schema` by name.
// Empty fields become NULL except in AID columns, which must be non-null.
// An empty `aid_columns` list is rejected with kMissingAid; use
// Table::with_row_aid() for one-row-per-entity tables without an identifier.
Table load_csv(const std::string& path, const std::vector<ColumnDef>& schema,
               const std::vector<std::string>& aid_columns, ChangePolicy policy);

// Parses CSV text already in memory (same rules as load_csv).
Table load_csv_text(const std::string& text, const std::vector<ColumnDef>& schema,
                    const std::vector<std::string>& aid_columns, ChangePolicy policy);

// Loads a CSV with no AID column; pair with synthesize_row_aid().
Table load_csv_unidentified(const std::string& path,
                            const std::vector<ColumnDef>& schema, ChangePolicy policy);

// Content-derived salt for update tables: one-way hash over the XOR
// accumulation of per-cell hashes. Row and column order independent.
Salt derive_salt_table(const Table& table);

// Salt as a one-way hash of the raw file bytes (CSV-file deployments).
Salt derive_salt_file(const std::string& path);
Salt derive_salt_bytes(std::string_view bytes);

// 256 bits from the process CSPRNG. Throws kEntropyUnavailable on failure.
Salt generate_salt_random();

// Sidecar persistence: raw salt bytes, exact hash-output length. Reading a
// missing sidecar throws kIoError (a configured salt is never silently
// regenerated).
void write_salt_file(const std::string& path, const Salt& salt);
Salt read_salt_file(const std::string& path);

}  // namespace anonq

#endif  // ANONQ_TABLE_HPP
