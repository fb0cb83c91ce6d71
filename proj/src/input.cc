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

#include "also/input.h"

#include <cmath>
#include <stdexcept>

namespace also {

void Ensemble::validate() const {
    if (probabilities.empty() || probabilities.size() != states.size()) {
        throw std::invalid_argument("Ensemble: needs one probability per state and at least one state");
    }
    double total = 0.0;
    for (double p : probabilities) {
        if (!(p > 0.0)) {
            throw std::invalid_argument("Ensemble: probabilities must be positive");
        }
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw std::invalid_argument("Ensemble: probabilities must sum to 1");
    }
    const int n = also::num_qubits(states.front());
    for (const auto &s : states) {
        if (also::num_qubits(s) != n) {
            throw std::invalid_argument("Ensemble: members have different qubit counts");
        }
    }
}

int Ensemble::num_qubits() const {
    if (states.empty()) {
        throw std::invalid_argument("Ensemble: empty");
    }
    return also::num_qubits(states.front());
}

int num_qubits(const InputState &state) {
    return std::visit([](const auto &s) { return s.num_qubits(); }, state);
}

int num_qubits(const InputSource &source) {
    return std::visit([](const auto &s) { return s.num_qubits(); }, source);
}

ComplexMatrix reduced_density_matrix(const InputState &state, std::span<const int> support) {
    return std::visit([&](const auto &s) { return also::reduced_density_matrix(s, support); }, state);
}

ComplexMatrix reduced_density_matrix(const InputSource &source, std::span<const int> support) {
    if (const auto *e = std::get_if<Ensemble>(&source)) {
        ComplexMatrix acc;
        for (size_t i = 0; i < e->states.size(); ++i) {
            ComplexMatrix part = e->probabilities[i] * reduced_density_matrix(e->states[i], support);
            if (i == 0) {
                acc = std::move(part);
            } else {
                acc += part;
            }
        }
        return acc;
    }
    if (const auto *p = std::get_if<PureState>(&source)) {
        return also::reduced_density_matrix(*p, support);
    }
    return also::reduced_density_matrix(std::get<ProductState>(source), support);
}

WeightedStates as_weighted_states(const InputSource &source, InputState &scratch) {
    WeightedStates out;
    if (const auto *e = std::get_if<Ensemble>(&source)) {
        e->validate();
        out.probabilities = e->probabilities;
        for (const auto &s : e->states) {
            out.states.push_back(&s);
        }
        return out;
    }
    if (const auto *p = std::get_if<PureState>(&source)) {
        scratch = *p;
    } else {
        scratch = std::get<ProductState>(source);
    }
    out.probabilities = {1.0};
    out.states = {&scratch};
    return out;
}

}  // namespace also
