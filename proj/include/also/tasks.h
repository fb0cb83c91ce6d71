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

#ifndef ALSO_TASKS_H
#define ALSO_TASKS_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "also/estimator.h"

namespace also {

/// J = (1/n) sum_i |0><0|_i: n one-local terms of weight 1/n.
ObservableSum state_prep_observable(int num_qubits);

/// The last n_B qubits form the trash register B.
std::vector<int> trash_qubits(int num_qubits, int trash);

/// 1[A] (x) J[B]: n_B one-local terms on B with weight 1/n_B.
ObservableSum autoencoder_observable(int num_qubits, int trash);

struct CompatibleTarget {
    PureState state;
    /// theta* with U(theta*)|psi> = |0...0>. For auditing only.
    ParamTensor hidden;
};

/// |psi> = U(theta*)^dagger |0...0> for theta* uniform on [0, 2pi).
CompatibleTarget gen_compatible_target(const AnsatzConfig &ansatz, Rng &rng);

/// Uniformly random computational basis state.
ProductState gen_basis_target(int num_qubits, Rng &rng);

/// 1 - |<0...0| U(theta) |psi>|^2. Throws std::invalid_argument above the dense limit.
double true_infidelity(const InputState &target, const ParamTensor &theta, const BrickTemplate &tmpl);

struct AutoencoderEnsemble {
    Ensemble ensemble;
    /// Present when the members were built as U(theta*)^dagger (|phi_i> (x) |0>_B).
    std::optional<ParamTensor> hidden;
};

/// Two members with p = (1/3, 2/3). Within the dense limit the members are
/// U(theta*)^dagger (|phi_i>_A (x) |0...0>_B) for orthonormal Haar |phi_i>, so
/// cost 0 is reachable. Above it, members are product states: random
/// single-qubit states on A and random basis bits on B.
AutoencoderEnsemble gen_ensemble(int num_qubits, int trash, const AnsatzConfig &ansatz, Rng &rng);

CostFunction state_prep_cost(const InputState &target, const AnsatzConfig &ansatz);
CostFunction autoencoder_cost(const Ensemble &ensemble, int trash, const AnsatzConfig &ansatz);

enum class TargetKind { Auto, Compatible, Basis };

/// Everything needed to regenerate a problem instance.
struct ProblemSpec {
    ObjectiveKind task = ObjectiveKind::StatePrep;
    int num_qubits = 8;
    int depth = 2;
    int trash = 0;
    std::string brick = "ry-cnot-ry";
    /// Auto: compatible within the dense limit, basis states above.
    TargetKind target = TargetKind::Auto;
    uint64_t seed = 0;

    bool operator==(const ProblemSpec &) const = default;
};

std::string problem_to_json(const ProblemSpec &spec);
/// Throws ConfigError.
ProblemSpec problem_from_json(const std::string &text);

struct Problem {
    ProblemSpec spec;
    AnsatzConfig ansatz;
    CostFunction cost;
    /// State-preparation target, if any.
    std::optional<InputState> target;
    std::optional<ParamTensor> hidden;

    /// True infidelity where a dense overlap is available.
    bool has_infidelity() const;
    double infidelity(const ParamTensor &theta) const;
};

/// Builds the instance deterministically from spec.seed.
Problem make_problem(const ProblemSpec &spec);

}  // namespace also

#endif
