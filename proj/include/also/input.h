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

#ifndef ALSO_INPUT_H
#define ALSO_INPUT_H

#include <span>
#include <variant>
#include <vector>

#include "also/qsim.h"

namespace also {

/// A single input state: dense or factored.
using InputState = std::variant<PureState, ProductState>;

/// Mixture {(p_i, |psi_i>)} standing for rho = sum_i p_i |psi_i><psi_i|.
struct Ensemble {
    std::vector<double> probabilities;
    std::vector<InputState> states;

    /// sum p_i = 1 within 1e-12, p_i > 0, equal qubit counts.
    void validate() const;
    int num_qubits() const;
};

using InputSource = std::variant<PureState, ProductState, Ensemble>;

int num_qubits(const InputState &state);
int num_qubits(const InputSource &source);

/// Reduced density matrix of the input on an ascending support.
ComplexMatrix reduced_density_matrix(const InputState &state, std::span<const int> support);
ComplexMatrix reduced_density_matrix(const InputSource &source, std::span<const int> support);

/// View of a source as weighted states (a single state has weight 1).
struct WeightedStates {
    std::vector<double> probabilities;
    std::vector<const InputState *> states;
};

/// Returns pointers into `source` (or into `scratch` for a bare state).
WeightedStates as_weighted_states(const InputSource &source, InputState &scratch);

}  // namespace also

#endif
