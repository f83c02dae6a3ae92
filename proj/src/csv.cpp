/*
 * Copyright 2026 The ccsynth Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "ccsynth/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "ccsynth/error.hpp"

namespace ccsynth {
namespace {

std::string_view Trim(std::string_view s) {
  const auto blank = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (!s.empty() && blank(s.front())) s.remove_prefix(1);
  while (!s.empty() && blank(s.back())) s.remove_suffix(1);
  return s;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kFileNotFound, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

Table SplitTable(std::string_view text) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  auto records = ParseCsv(text);
  if (records.empty()) throw Error(ErrorCode::kEmptyFile, "file has no header row");
  Table table;
  table.header = std::move(records.front());
  std::set<std::string> names;
  for (auto& name : table.header) {
    name = std::string(Trim(name));
    if (!names.insert(name).second) {
      throw Error(ErrorCode::kHeaderMismatch, "duplicate column '" + name + "'");
    }
  }
  table.rows.assign(std::make_move_iterator(records.begin() + 1),
                    std::make_move_iterator(records.end()));
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    if (table.rows[r].size() != table.header.size()) {
      throw Error(ErrorCode::kHeaderMismatch,
                  "data row " + std::to_string(r + 1) + " has " +
                      std::to_string(table.rows[r].size()) +
                      " fields, header has " +
                      std::to_string(table.header.size()));
    }
  }
  return table;
}

Dataset Assemble(const Table& table, const std::vector<ColumnKind>& kinds,
                 bool retain_bad_rows) {
  Schema schema;
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    schema.push_back(ColumnSchema{table.header[c], kinds[c], c});
  }
  std::vector<double> numeric;
  std::vector<std::string> categorical;
  std::vector<std::uint8_t> incomplete;
  std::vector<std::size_t> source_rows;
  std::size_t skipped = 0;
  std::size_t kept = 0;
  std::vector<double> row_numeric;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    row_numeric.clear();
    bool bad = false;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (kinds[c] != ColumnKind::kNumeric) continue;
      auto value = ParseReal(row[c]);
      if (!value) {
        bad = true;
        row_numeric.push_back(0.0);
      } else {
        row_numeric.push_back(*value);
      }
    }
    if (bad && !retain_bad_rows) {
      ++skipped;
      continue;
    }
    numeric.insert(numeric.end(), row_numeric.begin(), row_numeric.end());
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (kinds[c] == ColumnKind::kCategorical) {
        categorical.emplace_back(Trim(row[c]));
      }
    }
    incomplete.push_back(bad ? 1 : 0);
    source_rows.push_back(r);
    ++kept;
  }
  return Dataset(std::move(schema), std::move(numeric), std::move(categorical),
                 kept, std::move(incomplete), std::move(source_rows), skipped);
}

std::size_t HeaderPosition(const Table& table, const std::string& name) {
  auto it = std::find(table.header.begin(), table.header.end(), name);
  return it == table.header.end() ? table.header.size()
                                  : static_cast<std::size_t>(it - table.header.begin());
}

}  // namespace

std::optional<double> ParseReal(std::string_view cell) {
  cell = Trim(cell);
  if (cell.empty()) return std::nullopt;
  if (cell.front() == '+') cell.remove_prefix(1);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || end != cell.data() + cell.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

std::vector<std::vector<std::string>> ParseCsv(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  auto end_record = [&] {
    record.push_back(std::move(field));
    field.clear();
    // Blank lines carry no record.
    if (!(record.size() == 1 && Trim(record.front()).empty())) {
      records.push_back(std::move(record));
    }
    record.clear();
    field_started = false;
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (in_quotes) {
      if (ch == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(ch);
      }
      continue;
    }
    switch (ch) {
      case '"':
        in_quotes = true;
        field_started = true;
        break;
      case ',':
        record.push_back(std::move(field));
        field.clear();
        field_started = true;
        break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') break;
        end_record();
        break;
      case '\n':
        end_record();
        break;
      default:
        field.push_back(ch);
        field_started = true;
    }
  }
  if (in_quotes) {
    throw Error(ErrorCode::kHeaderMismatch, "unterminated quoted field");
  }
  if (field_started || !field.empty() || !record.empty()) end_record();
  return records;
}

Dataset IngestCsvText(std::string_view text, const IngestOptions& options) {
  const Table table = SplitTable(text);
  if (table.rows.empty()) {
    throw Error(ErrorCode::kEmptyFile, "file has a header but no data rows");
  }
  for (const auto& [name, kind] : options.overrides) {
    if (HeaderPosition(table, name) == table.header.size()) {
      throw Error(ErrorCode::kHeaderMismatch,
                  "--col-type names unknown column '" + name + "'");
    }
  }
  for (const auto& name : options.exclude) {
    if (HeaderPosition(table, name) == table.header.size()) {
      throw Error(ErrorCode::kHeaderMismatch,
                  "excluded column '" + name + "' is not in the header");
    }
  }

  std::vector<ColumnKind> kinds(table.header.size());
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    const std::string& name = table.header[c];
    if (std::find(options.exclude.begin(), options.exclude.end(), name) !=
        options.exclude.end()) {
      kinds[c] = ColumnKind::kIgnored;
      continue;
    }
    if (auto it = options.overrides.find(name); it != options.overrides.end()) {
      kinds[c] = it->second;
      continue;
    }
    bool any = false;
    bool numeric = true;
    for (const auto& row : table.rows) {
      if (Trim(row[c]).empty()) continue;
      any = true;
      if (!ParseReal(row[c])) {
        numeric = false;
        break;
      }
    }
    kinds[c] = !any ? ColumnKind::kIgnored
                    : (numeric ? ColumnKind::kNumeric : ColumnKind::kCategorical);
  }
  if (std::none_of(kinds.begin(), kinds.end(),
                   [](ColumnKind k) { return k != ColumnKind::kIgnored; })) {
    throw Error(ErrorCode::kNoUsableColumns, "no numeric or categorical columns");
  }
  return Assemble(table, kinds, options.retain_bad_rows);
}

Dataset IngestCsv(const std::string& path, const IngestOptions& options) {
  return IngestCsvText(ReadFile(path), options);
}

Dataset IngestCsvTextForProfile(std::string_view text,
                                const ConformanceProfile& profile,
                                bool retain_bad_rows) {
  const Table table = SplitTable(text);
  std::vector<ColumnKind> kinds(table.header.size(), ColumnKind::kIgnored);
  std::size_t last_numeric = 0;
  bool first = true;
  for (const auto& column : profile.schema) {
    if (column.kind == ColumnKind::kIgnored) continue;
    const std::size_t pos = HeaderPosition(table, column.name);
    const bool required =
        column.kind == ColumnKind::kNumeric ||
        std::any_of(profile.disjunctive.begin(), profile.disjunctive.end(),
                    [&](const auto& d) { return d.attribute == column.name; });
    if (pos == table.header.size()) {
      if (!required) continue;
      throw Error(ErrorCode::kSchemaMismatch,
                  std::string(ColumnKindName(column.kind)) + " column '" +
                      column.name + "' required by the profile is missing");
    }
    if (column.kind == ColumnKind::kNumeric) {
      if (!first && pos < last_numeric) {
        throw Error(ErrorCode::kSchemaMismatch,
                    "numeric column '" + column.name +
                        "' is out of order relative to the profile");
      }
      last_numeric = pos;
      first = false;
    }
    kinds[pos] = column.kind;
  }
  return Assemble(table, kinds, retain_bad_rows);
}

Dataset IngestCsvForProfile(const std::string& path,
                            const ConformanceProfile& profile,
                            bool retain_bad_rows) {
  return IngestCsvTextForProfile(ReadFile(path), profile, retain_bad_rows);
}

}  // namespace ccsynth
