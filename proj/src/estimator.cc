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

#include "also/estimator.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "also/errors.h"

namespace also {

namespace {

bool is_diagonal(const ComplexMatrix &m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (r != c && std::abs(m(r, c)) > 1e-12) {
                return false;
            }
        }
    }
    return true;
}

uint64_t parse_count(const std::string &text, const std::string &what) {
    size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (used != text.size() || !(v >= 1.0) || v != std::floor(v) || v > 1e18) {
        throw std::invalid_argument(what + " must be a positive integer, got '" + text + "'");
    }
    return static_cast<uint64_t>(v);
}

// Local index of `outcome` restricted to `support` (support[0] is the most significant).
size_t local_index(uint64_t outcome, int n, std::span<const int> support) {
    size_t idx = 0;
    for (int q : support) {
        idx = (idx << 1) | static_cast<size_t>(outcome_bit(outcome, n, q));
    }
    return idx;
}

double shared_shots(const CostFunction &cf, const ParamTensor &theta, uint64_t shots, Rng &rng) {
    const int n = cf.num_qubits();
    if (n > dense_limit()) {
        throw std::invalid_argument("eval_shots: shared shots need a dense register; n = " + std::to_string(n) +
                                    " exceeds the dense limit (use per-term shots)");
    }
    InputState scratch = ProductState::zero(1);
    const WeightedStates ws = as_weighted_states(cf.input(), scratch);
    std::vector<OutcomeSampler> samplers;
    samplers.reserve(ws.states.size());
    for (const InputState *s : ws.states) {
        PureState dense = std::holds_alternative<PureState>(*s) ? std::get<PureState>(*s)
                                                                : dense_from_product(std::get<ProductState>(*s));
        ComplexVector amps = dense.amplitudes();
        apply_ansatz_inplace(amps, theta, cf.ansatz().brick);
        samplers.emplace_back(amps);
    }
    std::vector<double> cdf(ws.probabilities.size());
    double acc = 0.0;
    for (size_t i = 0; i < cdf.size(); ++i) {
        acc += ws.probabilities[i];
        cdf[i] = acc;
    }
    const auto &terms = cf.observable().terms;
    std::vector<double> sums(terms.size(), 0.0);
    for (uint64_t s = 0; s < shots; ++s) {
        size_t member = 0;
        if (cdf.size() > 1) {
            const double u = rng.uniform() * cdf.back();
            member = std::min<size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin(), cdf.size() - 1);
        }
        const uint64_t outcome = samplers[member].sample(rng);
        for (size_t t = 0; t < terms.size(); ++t) {
            const size_t idx = local_index(outcome, n, terms[t].support);
            sums[t] += terms[t].matrix(idx, idx).real();
        }
    }
    double total = 0.0;
    for (size_t t = 0; t < terms.size(); ++t) {
        total += terms[t].weight * sums[t] / static_cast<double>(shots);
    }
    return total;
}

double per_term_shots(const CostFunction &cf, const ParamTensor &theta, uint64_t shots, Rng &rng) {
    const int n = cf.num_qubits();
    const auto placements = layout(n, cf.ansatz().depth);
    double total = 0.0;
    for (const auto &term : cf.observable().terms) {
        const Lightcone cone = compute_lightcone(term, n, cf.ansatz().depth, placements);
        const ComplexMatrix rho = reduced_density_matrix(cf.input(), cone.qubits);
        const Eigen::Index dim = term.matrix.rows();
        std::vector<double> cdf(dim);
        double acc = 0.0;
        for (Eigen::Index x = 0; x < dim; ++x) {
            ComplexMatrix proj = ComplexMatrix::Zero(dim, dim);
            proj(x, x) = 1.0;
            const ReducedOperator w = contract(LocalObservable{term.support, proj, 1.0}, theta, cf.ansatz().brick, cone);
            acc += std::max(0.0, trace_product_hermitian(w.matrix, rho));
            cdf[x] = acc;
        }
        double sum = 0.0;
        for (uint64_t s = 0; s < shots; ++s) {
            const double u = rng.uniform() * acc;
            const size_t x = std::min<size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin(), dim - 1);
            sum += term.matrix(x, x).real();
        }
        total += term.weight * sum / static_cast<double>(shots);
    }
    return total;
}

}  // namespace

const char *to_string(ObjectiveKind kind) {
    switch (kind) {
        case ObjectiveKind::StatePrep:
            return "state-prep";
        case ObjectiveKind::Autoencoder:
            return "autoencoder";
        case ObjectiveKind::Custom:
            return "custom";
    }
    return "?";
}

CostFunction::CostFunction(ObjectiveKind kind, InputSource input, ObservableSum observable, AnsatzConfig ansatz,
                           int locality_cap)
    : kind_(kind), input_(std::move(input)), observable_(std::move(observable)), ansatz_(std::move(ansatz)) {
    observable_.validate();
    if (observable_.size() == 0) {
        throw std::invalid_argument("CostFunction: empty observable");
    }
    for (const auto &term : observable_.terms) {
        if (term.locality() > locality_cap) {
            throw std::invalid_argument("CostFunction: observable term is " + std::to_string(term.locality()) +
                                        "-local, above the cap of " + std::to_string(locality_cap));
        }
    }
    if (also::num_qubits(input_) != ansatz_.num_qubits) {
        throw std::invalid_argument("CostFunction: input has " + std::to_string(also::num_qubits(input_)) +
                                    " qubits but the ansatz has " + std::to_string(ansatz_.num_qubits));
    }
    if (const auto *ens = std::get_if<Ensemble>(&input_)) {
        ens->validate();
    }
    fused_ = fuse_by_lightcone(observable_, ansatz_.num_qubits, ansatz_.depth);
    input_reduced_.reserve(fused_.size());
    for (const auto &f : fused_) {
        input_reduced_.push_back(reduced_density_matrix(input_, f.cone.qubits));
    }
}

std::vector<std::vector<int>> CostFunction::supports() const {
    std::vector<std::vector<int>> out;
    out.reserve(fused_.size());
    for (const auto &f : fused_) {
        out.push_back(f.cone.qubits);
    }
    return out;
}

void CostFunction::check_theta(const ParamTensor &theta) const {
    if (theta.num_qubits() != ansatz_.num_qubits || theta.depth() != ansatz_.depth ||
        theta.params_per_brick() != ansatz_.brick.num_params()) {
        throw std::invalid_argument("theta shape does not match the ansatz");
    }
}

std::vector<ReducedOperator> CostFunction::reduced_operators(const ParamTensor &theta) const {
    check_theta(theta);
    std::vector<ReducedOperator> ops;
    ops.reserve(fused_.size());
    for (const auto &f : fused_) {
        ops.push_back(contract(f.observable, theta, ansatz_.brick, f.cone));
    }
    return ops;
}

double eval_exact(const CostFunction &cf, const ParamTensor &theta) {
    const auto ops = cf.reduced_operators(theta);
    double total = 0.0;
    for (size_t i = 0; i < ops.size(); ++i) {
        total += trace_product_hermitian(ops[i].matrix, cf.input_reduced(i));
    }
    return total;
}

double eval_shots(const CostFunction &cf, const ParamTensor &theta, uint64_t shots, Rng &rng, ResourceLedger &ledger,
                  ShotMode mode) {
    if (shots < 1) {
        throw std::invalid_argument("eval_shots: K must be >= 1");
    }
    cf.check_theta(theta);
    for (const auto &term : cf.observable().terms) {
        if (!is_diagonal(term.matrix)) {
            throw std::invalid_argument("eval_shots: observable terms must be diagonal in the computational basis");
        }
    }
    const double value =
        mode == ShotMode::Shared ? shared_shots(cf, theta, shots, rng) : per_term_shots(cf, theta, shots, rng);
    ledger.charge(shots * cf.num_terms());
    return value;
}

ShadowSet acquire_shadows(const CostFunction &cf, size_t records, Rng &rng, ResourceLedger &ledger) {
    ShadowSet set = sample_shadows(cf.input(), records, rng);
    ledger.charge(records);
    return set;
}

ReducedShadowCache prepare_shadows(const CostFunction &cf, const ShadowSet &set) {
    if (set.num_qubits() != cf.num_qubits()) {
        throw std::invalid_argument("shadow set has " + std::to_string(set.num_qubits()) + " qubits, cost function has " +
                                    std::to_string(cf.num_qubits()));
    }
    return ReducedShadowCache(set, cf.supports());
}

double eval_shadow(const CostFunction &cf, const ParamTensor &theta, const ReducedShadowCache &cache) {
    if (cache.num_qubits() != cf.num_qubits()) {
        throw std::invalid_argument("eval_shadow: shadow qubit count does not match the cost function");
    }
    const auto ops = cf.reduced_operators(theta);
    const std::vector<double> ones(ops.size(), 1.0);
    return estimate(cache, ops, ones);
}

double eval_shadow(const CostFunction &cf, const ParamTensor &theta, const ShadowSet &set) {
    return eval_shadow(cf, theta, prepare_shadows(cf, set));
}

BackendSpec parse_backend(const std::string &text) {
    if (text == "exact" || text == "infinite") {
        return ExactSpec{};
    }
    const auto colon = text.find(':');
    const std::string head = text.substr(0, colon);
    if (colon == std::string::npos) {
        throw std::invalid_argument("unknown backend '" + text + "' (expected exact, shots:K or shadow:T)");
    }
    std::string rest = text.substr(colon + 1);
    if (head == "shots") {
        ShotsSpec spec;
        const auto second = rest.find(':');
        if (second != std::string::npos) {
            const std::string mode = rest.substr(second + 1);
            if (mode == "per-term") {
                spec.mode = ShotMode::PerTerm;
            } else if (mode != "shared") {
                throw std::invalid_argument("unknown shot mode '" + mode + "' (expected shared or per-term)");
            }
            rest = rest.substr(0, second);
        }
        spec.shots = parse_count(rest, "shots K");
        return spec;
    }
    if (head == "shadow") {
        return ShadowSpec{parse_count(rest, "shadow T")};
    }
    throw std::invalid_argument("unknown backend '" + text + "' (expected exact, shots:K or shadow:T)");
}

std::string to_string(const BackendSpec &spec) {
    if (std::holds_alternative<ExactSpec>(spec)) {
        return "exact";
    }
    if (const auto *s = std::get_if<ShotsSpec>(&spec)) {
        return "shots:" + std::to_string(s->shots) + (s->mode == ShotMode::PerTerm ? ":per-term" : "");
    }
    return "shadow:" + std::to_string(std::get<ShadowSpec>(spec).records);
}

Estimator::Estimator(const CostFunction &cf, const BackendSpec &spec, Rng rng, ResourceLedger &ledger)
    : cf_(&cf), spec_(spec), rng_(rng), ledger_(&ledger) {
    if (const auto *s = std::get_if<ShadowSpec>(&spec_)) {
        shadows_ = std::make_shared<const ShadowSet>(acquire_shadows(cf, s->records, rng_, ledger));
        cache_ = std::make_shared<const ReducedShadowCache>(prepare_shadows(cf, *shadows_));
    }
}

Estimator::Estimator(const CostFunction &cf, std::shared_ptr<const ShadowSet> shadows, ResourceLedger &ledger)
    : cf_(&cf), spec_(ShadowSpec{shadows ? shadows->size() : 1}), rng_(0), ledger_(&ledger),
      shadows_(std::move(shadows)) {
    if (!shadows_) {
        throw std::invalid_argument("Estimator: null shadow set");
    }
    cache_ = std::make_shared<const ReducedShadowCache>(prepare_shadows(cf, *shadows_));
}

double Estimator::value(const ParamTensor &theta) {
    double v = 0.0;
    if (std::holds_alternative<ExactSpec>(spec_)) {
        v = eval_exact(*cf_, theta);
    } else if (const auto *s = std::get_if<ShotsSpec>(&spec_)) {
        v = eval_shots(*cf_, theta, s->shots, rng_, *ledger_, s->mode);
    } else {
        v = eval_shadow(*cf_, theta, *cache_);
    }
    ledger_->evaluations++;
    if (!std::isfinite(v)) {
        throw NumericalError("objective evaluated to a non-finite value");
    }
    return v;
}

}  // namespace also
