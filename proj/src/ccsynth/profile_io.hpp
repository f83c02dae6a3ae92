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

#ifndef CCSYNTH_PROFILE_IO_HPP_
#define CCSYNTH_PROFILE_IO_HPP_

#include <string>
#include <string_view>

#include "ccsynth/core.hpp"

namespace ccsynth {

// Canonical JSON encoding of a profile. Reals use 17 significant digits and
// maps are emitted in key order, so the output is a pure function of the
// profile and re-parses to an identical profile.
std::string SerializeProfile(const ConformanceProfile& profile);

// Throws kMalformedProfile, kVersionMismatch or kInvariantViolation.
ConformanceProfile DeserializeProfile(std::string_view text);

void SaveProfile(const ConformanceProfile& profile, const std::string& path);
ConformanceProfile LoadProfile(const std::string& path);

}  // namespace ccsynth

#endif  // CCSYNTH_PROFILE_IO_HPP_
