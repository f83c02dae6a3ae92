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

// CSV ingestion: comma separated, header row, optional double-quote quoting.

#ifndef CCSYNTH_CSV_HPP_
#define CCSYNTH_CSV_HPP_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ccsynth/core.hpp"

namespace ccsynth {

struct IngestOptions {
  std::map<std::string, ColumnKind> overrides;
  std::vector<std::string> exclude;
  // Keep rows with an empty or unparseable numeric cell, flagged incomplete,
  // instead of dropping them.
  bool retain_bad_rows = false;
};

// Parses a finite real, ignoring surrounding blanks.
std::optional<double> ParseReal(std::string_view cell);

// Splits CSV text into records. Throws kHeaderMismatch on an unterminated
// quote.
std::vector<std::vector<std::string>> ParseCsv(std::string_view text);

// Columns are Numeric when every non-empty cell parses as a finite real,
// Categorical otherwise, Ignored when every cell is empty; overrides and
// exclusions win. Throws kFileNotFound, kEmptyFile, kHeaderMismatch,
// kNoUsableColumns.
Dataset IngestCsv(const std::string& path, const IngestOptions& options = {});
Dataset IngestCsvText(std::string_view text, const IngestOptions& options = {});

// Types columns by the profile's schema instead of inference; columns the
// profile does not know are ignored. Throws kSchemaMismatch when a numeric
// column or disjunctive attribute is missing or the numeric columns appear
// in a different order.
Dataset IngestCsvForProfile(const std::string& path,
                            const ConformanceProfile& profile,
                            bool retain_bad_rows = false);
Dataset IngestCsvTextForProfile(std::string_view text,
                                const ConformanceProfile& profile,
                                bool retain_bad_rows = false);

}  // namespace ccsynth

#endif  // CCSYNTH_CSV_HPP_
