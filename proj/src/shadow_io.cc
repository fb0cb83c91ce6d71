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

#include "also/shadow_io.h"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace also {

namespace {

template <typename T>
void put_le(std::ostream &out, T value) {
    unsigned char buf[sizeof(T)];
    for (size_t i = 0; i < sizeof(T); ++i) {
        buf[i] = static_cast<unsigned char>((static_cast<uint64_t>(value) >> (8 * i)) & 0xff);
    }
    out.write(reinterpret_cast<const char *>(buf), sizeof(T));
}

template <typename T>
T get_le(std::istream &in) {
    unsigned char buf[sizeof(T)];
    if (!in.read(reinterpret_cast<char *>(buf), sizeof(T))) {
        throw std::runtime_error("shadow file: truncated header");
    }
    uint64_t v = 0;
    for (size_t i = 0; i < sizeof(T); ++i) {
        v |= static_cast<uint64_t>(buf[i]) << (8 * i);
    }
    return static_cast<T>(v);
}

// Stored 3-bit value: basis | outcome << 2.
uint8_t pack_code(uint8_t code) {
    return static_cast<uint8_t>((code / 2) | ((code % 2) << 2));
}

}  // namespace

size_t packed_record_bytes(int num_qubits) {
    return (3 * static_cast<size_t>(num_qubits) + 7) / 8;
}

void write_shadows(std::ostream &out, const ShadowSet &set) {
    const int n = set.num_qubits();
    out.write(kShadowMagic, sizeof(kShadowMagic));
    put_le<uint32_t>(out, kShadowFormatVersion);
    put_le<uint32_t>(out, static_cast<uint32_t>(n));
    put_le<uint64_t>(out, set.size());
    put_le<uint64_t>(out, set.seed());
    std::vector<uint8_t> rec(packed_record_bytes(n));
    for (size_t j = 0; j < set.size(); ++j) {
        std::fill(rec.begin(), rec.end(), 0);
        for (int q = 0; q < n; ++q) {
            const uint32_t bits = pack_code(set.code(j, q));
            const size_t bit = 3 * static_cast<size_t>(q);
            // A 3-bit field straddles at most two bytes.
            const uint32_t shifted = bits << (bit % 8);
            rec[bit / 8] |= static_cast<uint8_t>(shifted & 0xff);
            if (shifted > 0xff) {
                rec[bit / 8 + 1] |= static_cast<uint8_t>(shifted >> 8);
            }
        }
        out.write(reinterpret_cast<const char *>(rec.data()), static_cast<std::streamsize>(rec.size()));
    }
    if (!out) {
        throw std::runtime_error("shadow file: write failed");
    }
}

void write_shadows(const std::filesystem::path &path, const ShadowSet &set) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    write_shadows(out, set);
}

ShadowSet read_shadows(std::istream &in) {
    char magic[sizeof(kShadowMagic)];
    if (!in.read(magic, sizeof(magic)) || std::memcmp(magic, kShadowMagic, sizeof(magic)) != 0) {
        throw std::runtime_error("shadow file: bad magic");
    }
    const auto version = get_le<uint32_t>(in);
    if (version != kShadowFormatVersion) {
        throw std::runtime_error("shadow file: unsupported version " + std::to_string(version));
    }
    const auto n = get_le<uint32_t>(in);
    const auto records = get_le<uint64_t>(in);
    const auto seed = get_le<uint64_t>(in);
    if (n < 1 || n > (1u << 20)) {
        throw std::runtime_error("shadow file: implausible qubit count " + std::to_string(n));
    }
    ShadowSet set(static_cast<int>(n), seed);
    const size_t bytes = packed_record_bytes(static_cast<int>(n));
    std::vector<uint8_t> rec(bytes);
    std::vector<uint8_t> codes(n);
    set.reserve(records);
    for (uint64_t j = 0; j < records; ++j) {
        if (!in.read(reinterpret_cast<char *>(rec.data()), static_cast<std::streamsize>(bytes))) {
            throw std::runtime_error("shadow file: truncated at record " + std::to_string(j));
        }
        for (uint32_t q = 0; q < n; ++q) {
            const size_t bit = 3 * static_cast<size_t>(q);
            uint32_t word = rec[bit / 8];
            if (bit / 8 + 1 < bytes) {
                word |= static_cast<uint32_t>(rec[bit / 8 + 1]) << 8;
            }
            const uint32_t v = (word >> (bit % 8)) & 7u;
            const uint32_t basis = v & 3u;
            if (basis > 2) {
                throw std::runtime_error("shadow file: invalid basis in record " + std::to_string(j));
            }
            codes[q] = static_cast<uint8_t>(2 * basis + (v >> 2));
        }
        set.append_codes(codes);
    }
    return set;
}

ShadowSet read_shadows(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    return read_shadows(in);
}

std::string shadows_to_json(const ShadowSet &set, size_t max_records) {
    static const char *names[3] = {"Z", "X", "Y"};
    nlohmann::json records = nlohmann::json::array();
    const size_t count = std::min(max_records, set.size());
    for (size_t j = 0; j < count; ++j) {
        nlohmann::json rec = nlohmann::json::array();
        for (int q = 0; q < set.num_qubits(); ++q) {
            const uint8_t c = set.code(j, q);
            rec.push_back(std::string(names[c / 2]) + std::to_string(c % 2));
        }
        records.push_back(std::move(rec));
    }
    nlohmann::json doc = {{"n", set.num_qubits()},
                          {"T", set.size()},
                          {"seed", set.seed()},
                          {"records", std::move(records)}};
    return doc.dump(2);
}

}  // namespace also
