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

#ifndef ALSO_LIGHTCONE_H
#define ALSO_LIGHTCONE_H

#include <vector>

#include "also/ansatz.h"
#include "also/linalg.h"
#include "also/qsim.h"

namespace also {

/// weight * matrix acting on `support` (sorted, distinct), identity elsewhere.
struct LocalObservable {
    std::vector<int> support;
    ComplexMatrix matrix;
    double weight = 1.0;

    /// Throws std::invalid_argument on unsorted/duplicate support, dimension
    /// mismatch, or a non-Hermitian matrix.
    void validate() const;
    int locality() const {
        return static_cast<int>(support.size());
    }
};

struct ObservableSum {
    std::vector<LocalObservable> terms;

    void validate() const;
    size_t size() const {
        return terms.size();
    }
    /// max_i |weight_i| * ||O_i||_inf
    double max_norm() const;
};

/// Subregister reached by tracing a support backward through the brick
/// layout, together with the bricks that do not cancel.
struct Lightcone {
    std::vector<int> qubits;
    /// Reverse-layer order (last layer first).
    std::vector<BlockPlacement> bricks;

    bool operator==(const Lightcone &) const = default;
};

/// Reduced Heisenberg operator W~ on `support` (ascending).
struct ReducedOperator {
    std::vector<int> support;
    ComplexMatrix matrix;
};

Lightcone compute_lightcone(std::span<const int> support, int num_qubits, int depth,
                            const std::vector<BlockPlacement> &placements);
Lightcone compute_lightcone(const LocalObservable &obs, int num_qubits, int depth,
                            const std::vector<BlockPlacement> &placements);

/// W~ = V^dagger (obs on cone) V, with V the cone's bricks. The observable
/// weight is not applied. The operator grows qubit by qubit as bricks are
/// absorbed, so cost is exponential in |cone| only.
ReducedOperator contract(const LocalObservable &obs, const ParamTensor &theta, const BrickTemplate &tmpl,
                         const Lightcone &cone);

/// Exact sum_i weight_i tr(W~_i rho|A_i) for a product input; any qubit count.
double evaluate_exact_product(const ObservableSum &obs, const ParamTensor &theta, const BrickTemplate &tmpl,
                              const ProductState &input);

/// Terms sharing one lightcone, merged into a single weighted observable on the
/// union of their supports (weights folded in, so `weight` is 1).
struct FusedTerm {
    LocalObservable observable;
    Lightcone cone;
    std::vector<size_t> members;
};

/// Groups terms by identical lightcone. Linear, so the estimate is unchanged.
std::vector<FusedTerm> fuse_by_lightcone(const ObservableSum &obs, int num_qubits, int depth);

}  // namespace also

#endif
