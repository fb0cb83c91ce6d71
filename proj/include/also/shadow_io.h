// Copyright 2026 The ALSO Authors
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

#ifndef ALSO_SHADOW_IO_H
#define ALSO_SHADOW_IO_H

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "also/shadow.h"

namespace also {

/// Binary layout, little-endian:
///   "ALSOSHDW" | u32 version | u32 n | u64 T | u64 seed
/// then T records of ceil(3n/8) bytes. Qubit q occupies bits [3q, 3q+3) of
/// its record: basis in the low two bits, outcome in the third.
inline constexpr char kShadowMagic[8] = {'A', 'L', 'S', 'O', 'S', 'H', 'D', 'W'};
inline constexpr uint32_t kShadowFormatVersion = 1;

size_t packed_record_bytes(int num_qubits);

void write_shadows(std::ostream &out, const ShadowSet &set);
void write_shadows(const std::filesystem::path &path, const ShadowSet &set);

/// Throws std::runtime_error on a bad magic, unknown version, truncated data or
/// invalid codes.
ShadowSet read_shadows(std::istream &in);
ShadowSet read_shadows(const std::filesystem::path &path);

/// {"n", "T", "seed", "records": [["Z0", "X1", ...], ...]}; debugging aid.
std::string shadows_to_json(const ShadowSet &set, size_t max_records = SIZE_MAX);

}  // namespace also

#endif
