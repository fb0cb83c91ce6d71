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

#ifndef ALSO_SHADOW_H
#define ALSO_SHADOW_H

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "also/input.h"
#include "also/lightcone.h"
#include "also/linalg.h"
#include "also/qsim.h"
#include "also/rng.h"

namespace also {

/// Which of {1, H, HS^dagger} was applied before the computational measurement.
enum class PauliBasis : uint8_t { Z = 0, X = 1, Y = 2 };

/// One single-copy shadow: a basis and an outcome bit per qubit.
struct ShadowRecord {
    std::vector<PauliBasis> bases;
    std::vector<uint8_t> outcomes;
};

/// Packed code of one qubit of a record: 2 * basis + outcome, in [0, 6).
inline uint8_t shadow_code(PauliBasis basis, int outcome) {
    return static_cast<uint8_t>(2 * static_cast<int>(basis) + outcome);
}

/// T shadow records over n qubits, stored as one code byte per qubit.
class ShadowSet {
   public:
    ShadowSet(int num_qubits, uint64_t seed);

    int num_qubits() const {
        return n_;
    }
    size_t size() const {
        return n_ == 0 ? 0 : codes_.size() / n_;
    }
    uint64_t seed() const {
        return seed_;
    }
    uint8_t code(size_t record, int qubit) const {
        return codes_[record * n_ + qubit];
    }
    std::span<const uint8_t> record_codes(size_t record) const {
        return {codes_.data() + record * n_, static_cast<size_t>(n_)};
    }
    ShadowRecord record(size_t j) const;

    void append(const ShadowRecord &rec);
    void append_codes(std::span<const uint8_t> codes);
    void reserve(size_t records) {
        codes_.reserve(records * n_);
    }

    const std::vector<uint8_t> &codes() const {
        return codes_;
    }

    /// Records of `a` followed by records of `b`; keeps a's seed.
    static ShadowSet concat(const ShadowSet &a, const ShadowSet &b);

   private:
    int n_;
    uint64_t seed_;
    std::vector<uint8_t> codes_;
};

/// F(U^dagger |u><u| U) with F(V) = 3V - 1.
ComplexMatrix single_shadow_factor(PauliBasis basis, int outcome);

/// T independent records. Dense states rotate and sample once per distinct
/// basis pattern; product states sample each qubit independently (any n);
/// ensembles draw a member i ~ p_i per record.
ShadowSet sample_shadows(const PureState &state, size_t records, Rng &rng);
ShadowSet sample_shadows(const ProductState &state, size_t records, Rng &rng);
ShadowSet sample_shadows(const InputSource &source, size_t records, Rng &rng);

/// rho_T restricted to `support`: (1/T) sum_j kron_{q in A} F(record_j at q).
struct ReducedShadowState {
    std::vector<int> support;
    ComplexMatrix matrix;
    size_t samples = 0;
};

/// Averages the per-record factors on `support` (ascending). Local patterns are
/// counted and the Kronecker sum is built digit by digit, so the cost is
/// bounded by the number of distinct prefixes rather than T * 4^|A|.
ReducedShadowState reduce(const ShadowSet &set, std::span<const int> support);

/// Reduced shadow states, computed once per support and then read-only.
class ReducedShadowCache {
   public:
    ReducedShadowCache() = default;
    ReducedShadowCache(const ShadowSet &set, const std::vector<std::vector<int>> &supports);

    const ReducedShadowState &at(const std::vector<int> &support) const;
    bool contains(const std::vector<int> &support) const {
        return states_.count(support) != 0;
    }
    size_t samples() const {
        return samples_;
    }
    int num_qubits() const {
        return n_;
    }

   private:
    std::map<std::vector<int>, ReducedShadowState> states_;
    size_t samples_ = 0;
    int n_ = 0;
};

/// sum_i weights[i] tr(ops[i] rho_T|A_i). Deterministic for a fixed cache.
double estimate(const ReducedShadowCache &cache, std::span<const ReducedOperator> ops, std::span<const double> weights);

/// Convenience: reduces `set` on each operator's support, then estimates.
double estimate(const ShadowSet &set, std::span<const ReducedOperator> ops, std::span<const double> weights);

/// Per-record values weight * tr(O rho^(j)|A); their mean is the shadow estimate.
std::vector<double> record_estimates(const ShadowSet &set, const LocalObservable &obs);

enum class SamplePlanRule {
    /// M^2 log(2MC/delta) 4^(2d+1) / eps^2 * max_norm^2
    TwoLocal,
    /// M^2 / eps^2 log(2MC/delta) 4^(k1 + (2 k0 - 2) d - 1) * max_norm^2
    General,
};

struct SamplePlanInput {
    uint64_t terms = 1;        // M
    uint64_t evaluations = 1;  // C
    int depth = 1;             // d
    double eps = 0.1;
    double delta = 0.01;
    double max_norm = 1.0;
    int k0 = 2;
    int k1 = 1;
    SamplePlanRule rule = SamplePlanRule::TwoLocal;
};

/// Pre-ceiling value of the bound.
long double plan_samples_value(const SamplePlanInput &in);

/// ceil(plan_samples_value). Throws std::invalid_argument unless eps, delta in
/// (0, 1) and M, C, d >= 1.
uint64_t plan_samples(const SamplePlanInput &in);

}  // namespace also

#endif
