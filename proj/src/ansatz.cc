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

#include "also/ansatz.h"

#include <cmath>
#include <stdexcept>

namespace also {

namespace {

bool is_two_qubit(GateKind kind) {
    return kind == GateKind::CNOT || kind == GateKind::CZ;
}

bool is_parameterized(GateKind kind) {
    return kind == GateKind::RX || kind == GateKind::RY || kind == GateKind::RZ;
}

ComplexMatrix single_gate(GateKind kind, double angle) {
    switch (kind) {
        case GateKind::RX:
            return gates::RX(angle);
        case GateKind::RY:
            return gates::RY(angle);
        case GateKind::RZ:
            return gates::RZ(angle);
        case GateKind::H:
            return gates::H();
        case GateKind::S:
            return gates::S();
        default:
            break;
    }
    throw std::invalid_argument("not a single-qubit gate kind");
}

}  // namespace

BrickTemplate::BrickTemplate(std::string name, std::vector<TemplateGate> gates)
    : name_(std::move(name)), gates_(std::move(gates)), num_params_(0) {
    std::vector<int> seen;
    for (const auto &g : gates_) {
        if (g.slot0 < 0 || g.slot0 > 1) {
            throw std::invalid_argument("brick template: slot must be 0 or 1");
        }
        if (is_two_qubit(g.kind)) {
            if (g.slot1 < 0 || g.slot1 > 1 || g.slot1 == g.slot0) {
                throw std::invalid_argument("brick template: two-qubit gate needs distinct slots");
            }
        }
        if (is_parameterized(g.kind)) {
            if (g.param < 0) {
                throw std::invalid_argument("brick template: rotation without a parameter slot");
            }
            if (g.param >= static_cast<int>(seen.size())) {
                seen.resize(g.param + 1, 0);
            }
            seen[g.param]++;
        } else if (g.param >= 0) {
            throw std::invalid_argument("brick template: constant gate with a parameter slot");
        }
    }
    for (int count : seen) {
        if (count != 1) {
            throw std::invalid_argument("brick template: parameter slots must cover 0..p-1 exactly once");
        }
    }
    num_params_ = static_cast<int>(seen.size());
}

BrickTemplate BrickTemplate::ry_cnot_ry() {
    return BrickTemplate("ry-cnot-ry", {
                                           {GateKind::RY, 0, -1, 2},
                                           {GateKind::RY, 1, -1, 3},
                                           {GateKind::CNOT, 0, 1, -1},
                                           {GateKind::RY, 0, -1, 0},
                                           {GateKind::RY, 1, -1, 1},
                                       });
}

BrickTemplate BrickTemplate::ry_cz_ry() {
    return BrickTemplate("ry-cz-ry", {
                                         {GateKind::RY, 0, -1, 2},
                                         {GateKind::RY, 1, -1, 3},
                                         {GateKind::CZ, 0, 1, -1},
                                         {GateKind::RY, 0, -1, 0},
                                         {GateKind::RY, 1, -1, 1},
                                     });
}

BrickTemplate BrickTemplate::ryrz_cnot_ryrz() {
    return BrickTemplate("ryrz-cnot-ryrz", {
                                               {GateKind::RY, 0, -1, 4},
                                               {GateKind::RZ, 0, -1, 5},
                                               {GateKind::RY, 1, -1, 6},
                                               {GateKind::RZ, 1, -1, 7},
                                               {GateKind::CNOT, 0, 1, -1},
                                               {GateKind::RY, 0, -1, 0},
                                               {GateKind::RZ, 0, -1, 1},
                                               {GateKind::RY, 1, -1, 2},
                                               {GateKind::RZ, 1, -1, 3},
                                           });
}

BrickTemplate BrickTemplate::from_name(const std::string &name) {
    if (name == "ry-cnot-ry") {
        return ry_cnot_ry();
    }
    if (name == "ry-cz-ry") {
        return ry_cz_ry();
    }
    if (name == "ryrz-cnot-ryrz") {
        return ryrz_cnot_ryrz();
    }
    throw std::invalid_argument("unknown brick template '" + name + "'");
}

ComplexMatrix brick_unitary(const BrickTemplate &tmpl, std::span<const double> gamma) {
    if (static_cast<int>(gamma.size()) != tmpl.num_params()) {
        throw std::invalid_argument("brick_unitary: expected " + std::to_string(tmpl.num_params()) + " angles, got " +
                                    std::to_string(gamma.size()));
    }
    ComplexMatrix u = ComplexMatrix::Identity(4, 4);
    for (const auto &g : tmpl.gates()) {
        ComplexMatrix full;
        if (g.kind == GateKind::CNOT || g.kind == GateKind::CZ) {
            ComplexMatrix two = g.kind == GateKind::CNOT ? gates::CNOT() : gates::CZ();
            if (g.slot0 == 0) {
                full = two;
            } else {
                // Control on slot 1: conjugate by SWAP.
                ComplexMatrix swap = ComplexMatrix::Zero(4, 4);
                swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 1;
                full = swap * two * swap;
            }
        } else {
            double angle = g.param >= 0 ? gamma[g.param] : 0.0;
            ComplexMatrix one = single_gate(g.kind, angle);
            full = g.slot0 == 0 ? kron(one, gates::I()) : kron(gates::I(), one);
        }
        u = full * u;
    }
    return u;
}

std::vector<BlockPlacement> layout(int num_qubits, int depth) {
    if (num_qubits < 2 || num_qubits % 2 != 0) {
        throw std::invalid_argument("layout: qubit count must be even and >= 2");
    }
    if (depth < 1) {
        throw std::invalid_argument("layout: depth must be >= 1");
    }
    std::vector<BlockPlacement> out;
    out.reserve(static_cast<size_t>(depth) * num_qubits / 2);
    for (int j = 0; j < depth; ++j) {
        for (int i = 0; i < num_qubits / 2; ++i) {
            int a = (2 * i + j) % num_qubits;
            out.push_back({j, i, a, (a + 1) % num_qubits});
        }
    }
    return out;
}

ParamTensor::ParamTensor(int num_qubits, int depth, int params_per_brick)
    : ParamTensor(num_qubits, depth, params_per_brick,
                  std::vector<double>(static_cast<size_t>(std::max(num_qubits, 0) / 2) * std::max(depth, 0) *
                                          std::max(params_per_brick, 0),
                                      0.0)) {
}

ParamTensor::ParamTensor(int num_qubits, int depth, int params_per_brick, std::vector<double> values)
    : n_(num_qubits), d_(depth), p_(params_per_brick), values_(std::move(values)) {
    if (n_ < 2 || n_ % 2 != 0) {
        throw std::invalid_argument("ParamTensor: qubit count must be even and >= 2");
    }
    if (d_ < 1 || p_ < 1) {
        throw std::invalid_argument("ParamTensor: depth and parameters per brick must be >= 1");
    }
    if (values_.size() != static_cast<size_t>(n_ / 2) * d_ * p_) {
        throw std::invalid_argument("ParamTensor: value count does not match (n/2) x d x p");
    }
    for (double v : values_) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("ParamTensor: non-finite parameter");
        }
    }
}

ParamTensor ParamTensor::random(int num_qubits, int depth, int params_per_brick, Rng &rng) {
    ParamTensor t(num_qubits, depth, params_per_brick);
    for (double &v : t.values_) {
        v = 2.0 * M_PI * rng.uniform();
    }
    return t;
}

ParamTensor ParamTensor::with_values(std::span<const double> values) const {
    return ParamTensor(n_, d_, p_, std::vector<double>(values.begin(), values.end()));
}

void apply_ansatz_inplace(ComplexVector &amps, const ParamTensor &theta, const BrickTemplate &tmpl, bool adjoint) {
    const int n = theta.num_qubits();
    if (amps.size() != (Eigen::Index{1} << n)) {
        throw std::invalid_argument("apply_ansatz: state size does not match theta");
    }
    if (theta.params_per_brick() != tmpl.num_params()) {
        throw std::invalid_argument("apply_ansatz: theta does not match the brick template");
    }
    auto placements = layout(n, theta.depth());
    std::span<cplx> view(amps.data(), amps.size());
    auto apply = [&](const BlockPlacement &pl) {
        ComplexMatrix g = brick_unitary(tmpl, theta.brick(pl.block, pl.layer));
        if (adjoint) {
            g = g.adjoint().eval();
        }
        const int targets[2] = {pl.a, pl.b};
        kernels::apply_to_vector(view, n, g, targets);
    };
    if (adjoint) {
        for (auto it = placements.rbegin(); it != placements.rend(); ++it) {
            apply(*it);
        }
    } else {
        for (const auto &pl : placements) {
            apply(pl);
        }
    }
}

PureState apply_ansatz(const PureState &state, const ParamTensor &theta, const BrickTemplate &tmpl, bool adjoint) {
    if (state.num_qubits() != theta.num_qubits()) {
        throw std::invalid_argument("apply_ansatz: state has " + std::to_string(state.num_qubits()) +
                                    " qubits but theta has " + std::to_string(theta.num_qubits()));
    }
    ComplexVector amps = state.amplitudes();
    apply_ansatz_inplace(amps, theta, tmpl, adjoint);
    return PureState(state.num_qubits(), std::move(amps));
}

}  // namespace also
