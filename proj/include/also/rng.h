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

#ifndef ALSO_RNG_H
#define ALSO_RNG_H

#include <cstdint>
#include <random>

namespace also {

/// SplitMix64 finalizer. Used to derive independent child seeds.
uint64_t mix_seed(uint64_t x);

/// Child seed for stream `stream` of `seed`. Pure function of its inputs.
uint64_t derive_seed(uint64_t seed, uint64_t stream);

/// Explicitly seeded, splittable generator.
///
/// Every stochastic routine takes an `Rng&`. Workers never share one; they get
/// `split(stream)` children so results do not depend on scheduling.
class Rng {
   public:
    explicit Rng(uint64_t seed) : seed_(seed), engine_(mix_seed(seed)) {
    }

    uint64_t seed() const {
        return seed_;
    }

    /// Deterministic child stream; does not advance this generator.
    Rng split(uint64_t stream) const {
        return Rng(derive_seed(seed_, stream));
    }

    uint64_t next_u64() {
        return engine_();
    }

    /// Uniform double in [0, 1).
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, bound).
    uint32_t below(uint32_t bound);

    double normal();

    std::mt19937_64 &engine() {
        return engine_;
    }

   private:
    uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace also

#endif
