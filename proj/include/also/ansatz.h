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

#ifndef ALSO_ANSATZ_H
#define ALSO_ANSATZ_H

#include <span>
#include <string>
#include <vector>

#include "also/linalg.h"
#include "also/qsim.h"
#include "also/rng.h"

namespace also {

enum class GateKind { RX, RY, RZ, CNOT, CZ, H, S };

/// One gate of a brick template. `slot1` is used by two-qubit gates only;
/// `param` is the gamma index of rotation gates.
struct TemplateGate {
    GateKind kind;
    int slot0;
    int slot1 = -1;
    int param = -1;
};

/// The two-qubit brick S(gamma), as a gate list in application order.
class BrickTemplate {
   public:
    BrickTemplate(std::string name, std::vector<TemplateGate> gates);

    /// S(g) = [RY(g0) x RY(g1)] . CNOT . [RY(g2) x RY(g3)], p = 4.
    static BrickTemplate ry_cnot_ry();
    /// Same layout with CZ as the entangler.
    static BrickTemplate ry_cz_ry();
    /// RY and RZ on both qubits, CNOT, then RY and RZ again; p = 8.
    static BrickTemplate ryrz_cnot_ryrz();

    /// Looks up one of the named templates above. Throws std::invalid_argument.
    static BrickTemplate from_name(const std::string &name);

    const std::string &name() const {
        return name_;
    }
    const std::vector<TemplateGate> &gates() const {
        return gates_;
    }
    int num_params() const {
        return num_params_;
    }

   private:
    std::string name_;
    std::vector<TemplateGate> gates_;
    int num_params_;
};

/// 4x4 unitary of the brick; slot 0 is the most significant qubit.
ComplexMatrix brick_unitary(const BrickTemplate &tmpl, std::span<const double> gamma);

/// Brick (block, layer) acting on qubits (a, b), 0-based.
struct BlockPlacement {
    int layer;
    int block;
    int a;
    int b;

    bool operator==(const BlockPlacement &) const = default;
};

/// Brick placements in application order: layer-major, blocks ascending.
/// Layer j block i covers a = (2i + j) mod n, b = (a + 1) mod n.
std::vector<BlockPlacement> layout(int num_qubits, int depth);

/// Parameters theta of shape (n/2) x d x p, flattened block-major.
class ParamTensor {
   public:
    ParamTensor(int num_qubits, int depth, int params_per_brick);
    ParamTensor(int num_qubits, int depth, int params_per_brick, std::vector<double> values);

    /// i.i.d. uniform on [0, 2pi).
    static ParamTensor random(int num_qubits, int depth, int params_per_brick, Rng &rng);

    int num_qubits() const {
        return n_;
    }
    int depth() const {
        return d_;
    }
    int params_per_brick() const {
        return p_;
    }
    size_t size() const {
        return values_.size();
    }

    std::span<const double> brick(int block, int layer) const {
        return {values_.data() + offset(block, layer), static_cast<size_t>(p_)};
    }
    std::span<double> brick(int block, int layer) {
        return {values_.data() + offset(block, layer), static_cast<size_t>(p_)};
    }
    double &at(int block, int layer, int k) {
        return values_[offset(block, layer) + k];
    }
    double at(int block, int layer, int k) const {
        return values_[offset(block, layer) + k];
    }

    const std::vector<double> &values() const {
        return values_;
    }
    std::vector<double> &values() {
        return values_;
    }

    /// Same shape, new values (length checked).
    ParamTensor with_values(std::span<const double> values) const;

   private:
    size_t offset(int block, int layer) const {
        return (static_cast<size_t>(block) * d_ + layer) * p_;
    }

    int n_;
    int d_;
    int p_;
    std::vector<double> values_;
};

/// Structure of the alternating layered circuit.
struct AnsatzConfig {
    int num_qubits;
    int depth;
    BrickTemplate brick;

    ParamTensor zeros() const {
        return ParamTensor(num_qubits, depth, brick.num_params());
    }
    ParamTensor random(Rng &rng) const {
        return ParamTensor::random(num_qubits, depth, brick.num_params(), rng);
    }
};

/// Applies U(theta) (or U(theta)^dagger when `adjoint`) to a dense state.
PureState apply_ansatz(const PureState &state, const ParamTensor &theta, const BrickTemplate &tmpl, bool adjoint = false);

/// In-place variant on a raw amplitude vector.
void apply_ansatz_inplace(ComplexVector &amps, const ParamTensor &theta, const BrickTemplate &tmpl, bool adjoint = false);

}  // namespace also

#endif
