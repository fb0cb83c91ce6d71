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

#include "also/tasks.h"

#include <cmath>
#include <stdexcept>

#include "also/errors.h"
#include "json.hpp"

namespace also {

namespace {

LocalObservable zero_projector(int q, double weight) {
    return LocalObservable{{q}, gates::projector0(), weight};
}

ComplexVector gaussian_vector(Eigen::Index dim, Rng &rng) {
    ComplexVector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        const double re = rng.normal();
        const double im = rng.normal();
        v(i) = cplx(re, im);
    }
    return v;
}

const char *target_name(TargetKind kind) {
    switch (kind) {
        case TargetKind::Auto:
            return "auto";
        case TargetKind::Compatible:
            return "compatible";
        case TargetKind::Basis:
            return "basis";
    }
    return "?";
}

}  // namespace

ObservableSum state_prep_observable(int num_qubits) {
    if (num_qubits < 1) {
        throw std::invalid_argument("state_prep_observable: n must be >= 1");
    }
    ObservableSum obs;
    for (int q = 0; q < num_qubits; ++q) {
        obs.terms.push_back(zero_projector(q, 1.0 / num_qubits));
    }
    return obs;
}

std::vector<int> trash_qubits(int num_qubits, int trash) {
    if (trash < 1 || trash >= num_qubits) {
        throw std::invalid_argument("trash register size must satisfy 1 <= n_B < n");
    }
    std::vector<int> out;
    for (int q = num_qubits - trash; q < num_qubits; ++q) {
        out.push_back(q);
    }
    return out;
}

ObservableSum autoencoder_observable(int num_qubits, int trash) {
    ObservableSum obs;
    for (int q : trash_qubits(num_qubits, trash)) {
        obs.terms.push_back(zero_projector(q, 1.0 / trash));
    }
    return obs;
}

CompatibleTarget gen_compatible_target(const AnsatzConfig &ansatz, Rng &rng) {
    ParamTensor hidden = ansatz.random(rng);
    PureState state = apply_ansatz(PureState::zero(ansatz.num_qubits), hidden, ansatz.brick, true);
    return {std::move(state), std::move(hidden)};
}

ProductState gen_basis_target(int num_qubits, Rng &rng) {
    std::vector<int> bits(num_qubits);
    for (int &b : bits) {
        b = static_cast<int>(rng.below(2));
    }
    return ProductState::basis(bits);
}

double true_infidelity(const InputState &target, const ParamTensor &theta, const BrickTemplate &tmpl) {
    const int n = num_qubits(target);
    if (n > dense_limit()) {
        throw std::invalid_argument("true_infidelity: n = " + std::to_string(n) + " exceeds the dense limit");
    }
    PureState dense = std::holds_alternative<PureState>(target) ? std::get<PureState>(target)
                                                                : dense_from_product(std::get<ProductState>(target));
    ComplexVector amps = dense.amplitudes();
    apply_ansatz_inplace(amps, theta, tmpl);
    return 1.0 - std::norm(amps(0));
}

AutoencoderEnsemble gen_ensemble(int num_qubits, int trash, const AnsatzConfig &ansatz, Rng &rng) {
    trash_qubits(num_qubits, trash);
    if (ansatz.num_qubits != num_qubits) {
        throw std::invalid_argument("gen_ensemble: ansatz qubit count differs from n");
    }
    AutoencoderEnsemble out;
    out.ensemble.probabilities = {1.0 / 3.0, 2.0 / 3.0};
    const int keep = num_qubits - trash;
    if (num_qubits <= dense_limit()) {
        const Eigen::Index dim_a = Eigen::Index{1} << keep;
        ComplexVector phi1 = gaussian_vector(dim_a, rng);
        phi1.normalize();
        ComplexVector phi2 = gaussian_vector(dim_a, rng);
        phi2 -= phi1.dot(phi2) * phi1;
        phi2.normalize();
        ParamTensor hidden = ansatz.random(rng);
        for (const ComplexVector *phi : {&phi1, &phi2}) {
            // A is the leading block of qubits, so |phi>_A (x) |0>_B sits at stride 2^{n_B}.
            ComplexVector amps = ComplexVector::Zero(Eigen::Index{1} << num_qubits);
            for (Eigen::Index a = 0; a < dim_a; ++a) {
                amps(a << trash) = (*phi)(a);
            }
            apply_ansatz_inplace(amps, hidden, ansatz.brick, true);
            out.ensemble.states.emplace_back(PureState(num_qubits, std::move(amps)));
        }
        out.hidden = std::move(hidden);
    } else {
        for (int m = 0; m < 2; ++m) {
            std::vector<Eigen::Vector2cd> factors(num_qubits);
            for (int q = 0; q < num_qubits; ++q) {
                if (q < keep) {
                    ComplexVector v = gaussian_vector(2, rng);
                    v.normalize();
                    factors[q] = Eigen::Vector2cd(v(0), v(1));
                } else {
                    factors[q] = rng.below(2) == 0 ? Eigen::Vector2cd(1.0, 0.0) : Eigen::Vector2cd(0.0, 1.0);
                }
            }
            out.ensemble.states.emplace_back(ProductState(std::move(factors)));
        }
    }
    out.ensemble.validate();
    return out;
}

CostFunction state_prep_cost(const InputState &target, const AnsatzConfig &ansatz) {
    InputSource source = std::holds_alternative<PureState>(target) ? InputSource(std::get<PureState>(target))
                                                                   : InputSource(std::get<ProductState>(target));
    return CostFunction(ObjectiveKind::StatePrep, std::move(source), state_prep_observable(ansatz.num_qubits), ansatz);
}

CostFunction autoencoder_cost(const Ensemble &ensemble, int trash, const AnsatzConfig &ansatz) {
    return CostFunction(ObjectiveKind::Autoencoder, ensemble, autoencoder_observable(ansatz.num_qubits, trash),
                        ansatz);
}

std::string problem_to_json(const ProblemSpec &spec) {
    nlohmann::json doc = {{"task", to_string(spec.task)}, {"n", spec.num_qubits}, {"d", spec.depth},
                          {"n_B", spec.trash},           {"brick", spec.brick}, {"target", target_name(spec.target)},
                          {"seed", spec.seed}};
    return doc.dump();
}

ProblemSpec problem_from_json(const std::string &text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw ConfigError(std::string("problem json: ") + e.what());
    }
    ProblemSpec spec;
    try {
        const std::string task = doc.at("task").get<std::string>();
        if (task == "state-prep") {
            spec.task = ObjectiveKind::StatePrep;
        } else if (task == "autoencoder") {
            spec.task = ObjectiveKind::Autoencoder;
        } else {
            throw ConfigError("problem json: unknown task '" + task + "'");
        }
        spec.num_qubits = doc.at("n").get<int>();
        spec.depth = doc.at("d").get<int>();
        spec.trash = doc.value("n_B", 0);
        spec.brick = doc.value("brick", std::string("ry-cnot-ry"));
        const std::string target = doc.value("target", std::string("auto"));
        if (target == "auto") {
            spec.target = TargetKind::Auto;
        } else if (target == "compatible") {
            spec.target = TargetKind::Compatible;
        } else if (target == "basis") {
            spec.target = TargetKind::Basis;
        } else {
            throw ConfigError("problem json: unknown target '" + target + "'");
        }
        spec.seed = doc.at("seed").get<uint64_t>();
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError(std::string("problem json: ") + e.what());
    }
    return spec;
}

bool Problem::has_infidelity() const {
    return target.has_value() && spec.num_qubits <= dense_limit();
}

double Problem::infidelity(const ParamTensor &theta) const {
    if (!has_infidelity()) {
        throw std::invalid_argument("infidelity is only defined for dense state-preparation problems");
    }
    return true_infidelity(*target, theta, ansatz.brick);
}

Problem make_problem(const ProblemSpec &spec) {
    AnsatzConfig ansatz{spec.num_qubits, spec.depth, BrickTemplate::from_name(spec.brick)};
    layout(spec.num_qubits, spec.depth);
    Rng rng = Rng(spec.seed).split(1);
    if (spec.task == ObjectiveKind::StatePrep) {
        TargetKind kind = spec.target;
        if (kind == TargetKind::Auto) {
            kind = spec.num_qubits <= dense_limit() ? TargetKind::Compatible : TargetKind::Basis;
        }
        if (kind == TargetKind::Compatible) {
            CompatibleTarget t = gen_compatible_target(ansatz, rng);
            InputState target = t.state;
            CostFunction cost = state_prep_cost(target, ansatz);
            return Problem{spec, ansatz, std::move(cost), std::move(target), std::move(t.hidden)};
        }
        InputState target = gen_basis_target(spec.num_qubits, rng);
        CostFunction cost = state_prep_cost(target, ansatz);
        return Problem{spec, ansatz, std::move(cost), std::move(target), std::nullopt};
    }
    if (spec.task == ObjectiveKind::Autoencoder) {
        AutoencoderEnsemble e = gen_ensemble(spec.num_qubits, spec.trash, ansatz, rng);
        CostFunction cost = autoencoder_cost(e.ensemble, spec.trash, ansatz);
        return Problem{spec, ansatz, std::move(cost), std::nullopt, std::move(e.hidden)};
    }
    throw std::invalid_argument("make_problem: custom objectives have no generator");
}

}  // namespace also
