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

#include "also/shadow.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "also/parallel.h"

namespace also {

namespace {

constexpr size_t kChunkRecords = 4096;
constexpr int kMaxReduceQubits = 12;

ComplexMatrix basis_rotation(PauliBasis basis) {
    switch (basis) {
        case PauliBasis::Z:
            return gates::I();
        case PauliBasis::X:
            return gates::H();
        case PauliBasis::Y:
            return gates::H() * gates::S().adjoint();
    }
    throw std::invalid_argument("unknown basis");
}

const std::array<ComplexMatrix, 6> &factor_table() {
    static const std::array<ComplexMatrix, 6> table = [] {
        std::array<ComplexMatrix, 6> t;
        for (int b = 0; b < 3; ++b) {
            for (int u = 0; u < 2; ++u) {
                t[2 * b + u] = single_shadow_factor(static_cast<PauliBasis>(b), u);
            }
        }
        return t;
    }();
    return table;
}

void check_support(int num_qubits, std::span<const int> support) {
    if (support.empty()) {
        throw std::invalid_argument("reduce: empty support");
    }
    for (size_t i = 0; i < support.size(); ++i) {
        if (support[i] < 0 || support[i] >= num_qubits) {
            throw std::invalid_argument("reduce: support qubit " + std::to_string(support[i]) + " out of range");
        }
        if (i > 0 && support[i] <= support[i - 1]) {
            throw std::invalid_argument("reduce: support must be sorted and distinct");
        }
    }
    if (static_cast<int>(support.size()) > kMaxReduceQubits) {
        throw std::invalid_argument("reduce: support larger than " + std::to_string(kMaxReduceQubits) + " qubits");
    }
}

uint64_t local_key(const ShadowSet &set, size_t record, std::span<const int> support) {
    uint64_t key = 0;
    for (int q : support) {
        key = key * 6 + set.code(record, q);
    }
    return key;
}

// Outcome bits for records of one product-state member.
void sample_product_outcomes(const ProductState &state, std::span<const size_t> records, std::vector<uint8_t> &codes,
                             int n, const Rng &root, uint64_t member) {
    std::vector<std::array<double, 3>> p0(n);
    for (int q = 0; q < n; ++q) {
        for (int b = 0; b < 3; ++b) {
            Eigen::Vector2cd v = basis_rotation(static_cast<PauliBasis>(b)) * state.factor(q);
            p0[q][b] = std::norm(v(0));
        }
    }
    const size_t chunks = (records.size() + kChunkRecords - 1) / kChunkRecords;
    parallel_for(chunks, [&](size_t c) {
        Rng rng = root.split(derive_seed(member + 1, c));
        const size_t end = std::min(records.size(), (c + 1) * kChunkRecords);
        for (size_t i = c * kChunkRecords; i < end; ++i) {
            uint8_t *rec = codes.data() + records[i] * n;
            for (int q = 0; q < n; ++q) {
                const int b = rec[q] / 2;
                rec[q] = static_cast<uint8_t>(2 * b + (rng.uniform() < p0[q][b] ? 0 : 1));
            }
        }
    });
}

// Outcome bits for records of one dense member: one rotation + sampler per distinct basis pattern.
void sample_dense_outcomes(const PureState &state, std::span<const size_t> records, std::vector<uint8_t> &codes,
                           int n, const Rng &root, uint64_t member) {
    std::vector<std::pair<uint64_t, size_t>> keyed(records.size());
    for (size_t i = 0; i < records.size(); ++i) {
        uint64_t key = 0;
        const uint8_t *rec = codes.data() + records[i] * n;
        for (int q = 0; q < n; ++q) {
            key = key * 3 + rec[q] / 2;
        }
        keyed[i] = {key, records[i]};
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<size_t> group_start;
    for (size_t i = 0; i < keyed.size(); ++i) {
        if (i == 0 || keyed[i].first != keyed[i - 1].first) {
            group_start.push_back(i);
        }
    }
    group_start.push_back(keyed.size());
    std::array<ComplexMatrix, 3> rotations = {basis_rotation(PauliBasis::Z), basis_rotation(PauliBasis::X),
                                              basis_rotation(PauliBasis::Y)};
    parallel_for(group_start.size() - 1, [&](size_t g) {
        const size_t lo = group_start[g];
        const size_t hi = group_start[g + 1];
        const uint64_t key = keyed[lo].first;
        ComplexVector amps = state.amplitudes();
        std::span<cplx> view(amps.data(), amps.size());
        const uint8_t *pattern = codes.data() + keyed[lo].second * n;
        for (int q = 0; q < n; ++q) {
            const int b = pattern[q] / 2;
            if (b != 0) {
                const int target[1] = {q};
                kernels::apply_to_vector(view, n, rotations[b], target);
            }
        }
        OutcomeSampler sampler(amps);
        Rng rng = root.split(derive_seed(member + 1, key));
        for (size_t i = lo; i < hi; ++i) {
            const uint64_t outcome = sampler.sample(rng);
            uint8_t *rec = codes.data() + keyed[i].second * n;
            for (int q = 0; q < n; ++q) {
                rec[q] = static_cast<uint8_t>((rec[q] & ~1u) | outcome_bit(outcome, n, q));
            }
        }
    });
}

ShadowSet sample_weighted(const WeightedStates &ws, size_t records, Rng &rng) {
    if (records < 1) {
        throw std::invalid_argument("sample_shadows: need at least one record");
    }
    const int n = num_qubits(*ws.states.front());
    const uint64_t base = rng.next_u64();
    const Rng root(base);
    std::vector<uint8_t> codes(records * n);
    std::vector<uint32_t> member(records, 0);
    {
        Rng pick = root.split(0);
        std::vector<double> cdf(ws.probabilities.size());
        std::partial_sum(ws.probabilities.begin(), ws.probabilities.end(), cdf.begin());
        for (size_t j = 0; j < records; ++j) {
            if (cdf.size() > 1) {
                const double u = pick.uniform() * cdf.back();
                member[j] = static_cast<uint32_t>(
                    std::min<size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin(), cdf.size() - 1));
            }
            uint8_t *rec = codes.data() + j * n;
            for (int q = 0; q < n; ++q) {
                rec[q] = static_cast<uint8_t>(2 * pick.below(3));
            }
        }
    }
    for (size_t m = 0; m < ws.states.size(); ++m) {
        std::vector<size_t> mine;
        for (size_t j = 0; j < records; ++j) {
            if (member[j] == m) {
                mine.push_back(j);
            }
        }
        if (mine.empty()) {
            continue;
        }
        if (const auto *dense = std::get_if<PureState>(ws.states[m])) {
            sample_dense_outcomes(*dense, mine, codes, n, root, m);
        } else {
            sample_product_outcomes(std::get<ProductState>(*ws.states[m]), mine, codes, n, root, m);
        }
    }
    ShadowSet set(n, base);
    set.append_codes(codes);
    return set;
}

}  // namespace

ShadowSet::ShadowSet(int num_qubits, uint64_t seed) : n_(num_qubits), seed_(seed) {
    if (num_qubits < 1) {
        throw std::invalid_argument("ShadowSet: needs at least one qubit");
    }
}

ShadowRecord ShadowSet::record(size_t j) const {
    ShadowRecord rec;
    rec.bases.resize(n_);
    rec.outcomes.resize(n_);
    for (int q = 0; q < n_; ++q) {
        const uint8_t c = code(j, q);
        rec.bases[q] = static_cast<PauliBasis>(c / 2);
        rec.outcomes[q] = c % 2;
    }
    return rec;
}

void ShadowSet::append(const ShadowRecord &rec) {
    if (static_cast<int>(rec.bases.size()) != n_ || static_cast<int>(rec.outcomes.size()) != n_) {
        throw std::invalid_argument("ShadowSet::append: record length does not match n");
    }
    for (int q = 0; q < n_; ++q) {
        if (static_cast<int>(rec.bases[q]) > 2 || rec.outcomes[q] > 1) {
            throw std::invalid_argument("ShadowSet::append: invalid basis or outcome");
        }
        codes_.push_back(shadow_code(rec.bases[q], rec.outcomes[q]));
    }
}

void ShadowSet::append_codes(std::span<const uint8_t> codes) {
    if (codes.size() % n_ != 0) {
        throw std::invalid_argument("ShadowSet::append_codes: length is not a multiple of n");
    }
    for (uint8_t c : codes) {
        if (c >= 6) {
            throw std::invalid_argument("ShadowSet::append_codes: code out of range");
        }
    }
    codes_.insert(codes_.end(), codes.begin(), codes.end());
}

ShadowSet ShadowSet::concat(const ShadowSet &a, const ShadowSet &b) {
    if (a.n_ != b.n_) {
        throw std::invalid_argument("ShadowSet::concat: qubit counts differ");
    }
    ShadowSet out(a.n_, a.seed_);
    out.codes_ = a.codes_;
    out.codes_.insert(out.codes_.end(), b.codes_.begin(), b.codes_.end());
    return out;
}

ComplexMatrix single_shadow_factor(PauliBasis basis, int outcome) {
    if (outcome != 0 && outcome != 1) {
        throw std::invalid_argument("single_shadow_factor: outcome must be 0 or 1");
    }
    ComplexMatrix u = basis_rotation(basis);
    ComplexMatrix ket = ComplexMatrix::Zero(2, 2);
    ket(outcome, outcome) = 1.0;
    ComplexMatrix v = u.adjoint() * ket * u;
    return 3.0 * v - gates::I();
}

ShadowSet sample_shadows(const PureState &state, size_t records, Rng &rng) {
    InputState s = state;
    WeightedStates ws{{1.0}, {&s}};
    return sample_weighted(ws, records, rng);
}

ShadowSet sample_shadows(const ProductState &state, size_t records, Rng &rng) {
    InputState s = state;
    WeightedStates ws{{1.0}, {&s}};
    return sample_weighted(ws, records, rng);
}

ShadowSet sample_shadows(const InputSource &source, size_t records, Rng &rng) {
    InputState scratch = ProductState::zero(1);
    return sample_weighted(as_weighted_states(source, scratch), records, rng);
}

ReducedShadowState reduce(const ShadowSet &set, std::span<const int> support) {
    check_support(set.num_qubits(), support);
    const size_t total = set.size();
    if (total == 0) {
        throw std::invalid_argument("reduce: empty shadow set");
    }
    const int k = static_cast<int>(support.size());
    std::vector<uint64_t> keys(total);
    for (size_t j = 0; j < total; ++j) {
        keys[j] = local_key(set, j, support);
    }
    std::sort(keys.begin(), keys.end());
    std::vector<uint64_t> unique_keys;
    std::vector<uint64_t> counts;
    for (size_t j = 0; j < total; ++j) {
        if (j == 0 || keys[j] != keys[j - 1]) {
            unique_keys.push_back(keys[j]);
            counts.push_back(0);
        }
        counts.back()++;
    }
    std::vector<uint64_t> place(k, 1);
    for (int t = k - 2; t >= 0; --t) {
        place[t] = place[t + 1] * 6;
    }
    const auto &table = factor_table();

    // Sum over records sharing a prefix of length `level`: sum_c F_c kron (sum over the sub-prefix c).
    auto build = [&](auto &&self, size_t lo, size_t hi, int level) -> ComplexMatrix {
        if (level == k) {
            uint64_t c = 0;
            for (size_t i = lo; i < hi; ++i) {
                c += counts[i];
            }
            ComplexMatrix one(1, 1);
            one(0, 0) = static_cast<double>(c);
            return one;
        }
        const Eigen::Index sub = Eigen::Index{1} << (k - level - 1);
        ComplexMatrix out = ComplexMatrix::Zero(2 * sub, 2 * sub);
        size_t i = lo;
        while (i < hi) {
            const uint64_t digit = (unique_keys[i] / place[level]) % 6;
            size_t j = i;
            while (j < hi && (unique_keys[j] / place[level]) % 6 == digit) {
                ++j;
            }
            ComplexMatrix inner = self(self, i, j, level + 1);
            const ComplexMatrix &f = table[digit];
            for (int r = 0; r < 2; ++r) {
                for (int c = 0; c < 2; ++c) {
                    out.block(r * sub, c * sub, sub, sub) += f(r, c) * inner;
                }
            }
            i = j;
        }
        return out;
    };
    ReducedShadowState state;
    state.support.assign(support.begin(), support.end());
    state.matrix = build(build, 0, unique_keys.size(), 0) / static_cast<double>(total);
    state.samples = total;
    return state;
}

ReducedShadowCache::ReducedShadowCache(const ShadowSet &set, const std::vector<std::vector<int>> &supports)
    : samples_(set.size()), n_(set.num_qubits()) {
    std::vector<std::vector<int>> unique = supports;
    std::sort(unique.begin(), unique.end());
    unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
    std::vector<ReducedShadowState> results(unique.size());
    parallel_for(unique.size(), [&](size_t i) { results[i] = reduce(set, unique[i]); });
    for (size_t i = 0; i < unique.size(); ++i) {
        states_.emplace(unique[i], std::move(results[i]));
    }
}

const ReducedShadowState &ReducedShadowCache::at(const std::vector<int> &support) const {
    auto it = states_.find(support);
    if (it == states_.end()) {
        throw std::invalid_argument("ReducedShadowCache: no reduced shadow for the requested support");
    }
    return it->second;
}

double estimate(const ReducedShadowCache &cache, std::span<const ReducedOperator> ops, std::span<const double> weights) {
    if (ops.size() != weights.size()) {
        throw std::invalid_argument("estimate: one weight per reduced operator required");
    }
    double total = 0.0;
    for (size_t i = 0; i < ops.size(); ++i) {
        const auto &state = cache.at(ops[i].support);
        if (state.matrix.rows() != ops[i].matrix.rows()) {
            throw std::invalid_argument("estimate: reduced operator and reduced shadow dimensions differ");
        }
        total += weights[i] * trace_product_hermitian(ops[i].matrix, state.matrix);
    }
    return total;
}

double estimate(const ShadowSet &set, std::span<const ReducedOperator> ops, std::span<const double> weights) {
    std::vector<std::vector<int>> supports;
    for (const auto &op : ops) {
        supports.push_back(op.support);
    }
    return estimate(ReducedShadowCache(set, supports), ops, weights);
}

std::vector<double> record_estimates(const ShadowSet &set, const LocalObservable &obs) {
    obs.validate();
    check_support(set.num_qubits(), obs.support);
    const auto &table = factor_table();
    std::unordered_map<uint64_t, double> memo;
    std::vector<double> out(set.size());
    const int k = obs.locality();
    for (size_t j = 0; j < set.size(); ++j) {
        const uint64_t key = local_key(set, j, obs.support);
        auto it = memo.find(key);
        if (it == memo.end()) {
            ComplexMatrix prod = ComplexMatrix::Ones(1, 1);
            uint64_t rest = key;
            std::vector<int> digits(k);
            for (int t = k - 1; t >= 0; --t) {
                digits[t] = static_cast<int>(rest % 6);
                rest /= 6;
            }
            for (int t = 0; t < k; ++t) {
                prod = kron(prod, table[digits[t]]);
            }
            it = memo.emplace(key, obs.weight * trace_product(obs.matrix, prod).real()).first;
        }
        out[j] = it->second;
    }
    return out;
}

long double plan_samples_value(const SamplePlanInput &in) {
    if (!(in.eps > 0.0 && in.eps < 1.0) || !(in.delta > 0.0 && in.delta < 1.0)) {
        throw std::invalid_argument("plan_samples: eps and delta must lie in (0, 1)");
    }
    if (in.terms < 1 || in.evaluations < 1 || in.depth < 1) {
        throw std::invalid_argument("plan_samples: M, C and d must be >= 1");
    }
    if (in.k0 < 1 || in.k1 < 1) {
        throw std::invalid_argument("plan_samples: k0 and k1 must be >= 1");
    }
    const long double m = static_cast<long double>(in.terms);
    const long double c = static_cast<long double>(in.evaluations);
    const long double eps = in.eps;
    const long double norm = in.max_norm;
    const long double log_term = std::log(2.0L * m * c / static_cast<long double>(in.delta));
    const long double exponent = in.rule == SamplePlanRule::TwoLocal
                                     ? 2.0L * in.depth + 1.0L
                                     : static_cast<long double>(in.k1 + (2 * in.k0 - 2) * in.depth - 1);
    return m * m / (eps * eps) * log_term * std::pow(4.0L, exponent) * norm * norm;
}

uint64_t plan_samples(const SamplePlanInput &in) {
    return static_cast<uint64_t>(std::ceil(plan_samples_value(in)));
}

}  // namespace also
