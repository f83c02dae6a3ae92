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

#ifndef CCSYNTH_ERROR_HPP_
#define CCSYNTH_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace ccsynth {

enum class ErrorCode {
  kInvalidArgument,
  kFileNotFound,
  kEmptyFile,
  kHeaderMismatch,
  kNoUsableColumns,
  kMalformedProfile,
  kVersionMismatch,
  kInvariantViolation,
  kDimensionMismatch,
  kSchemaMismatch,
  kMissingAttribute,
  kTooFewRows,
  kNoNumericColumns,
  kDegenerateData,
  kEmptyInput,
  kNonFinite,
  kNotSymmetric,
  kInvalidThreshold,
  kIo,
};

std::string_view ErrorCodeName(ErrorCode code);

// All recoverable failures in the library are reported as Error.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ccsynth

#endif  // CCSYNTH_ERROR_HPP_
