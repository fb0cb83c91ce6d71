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

#include "also/lightcone.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

namespace also {

void LocalObservable::validate() const {
    if (support.empty()) {
        throw std::invalid_argument("LocalObservable: empty support");
    }
    for (size_t i = 1; i < support.size(); ++i) {
        if (support[i] <= support[i - 1]) {
            throw std::invalid_argument("LocalObservable: support must be sorted and distinct");
        }
    }
    const Eigen::Index dim = Eigen::Index{1} << support.size();
    if (matrix.rows() != dim || matrix.cols() != dim) {
        throw std::invalid_argument("LocalObservable: matrix is not 2^k x 2^k for its support");
    }
    if (!is_hermitian(matrix)) {
        throw std::invalid_argument("LocalObservable: matrix is not Hermitian");
    }
}

void ObservableSum::validate() const {
    if (terms.empty()) {
        throw std::invalid_argument("ObservableSum: needs at least one term");
    }
    for (const auto &t : terms) {
        t.validate();
    }
}

double ObservableSum::max_norm() const {
    double best = 0.0;
    for (const auto &t : terms) {
        best = std::max(best, std::abs(t.weight) * spectral_norm(t.matrix));
    }
    return best;
}

Lightcone compute_lightcone(std::span<const int> support, int num_qubits, int depth,
                            const std::vector<BlockPlacement> &placements) {
    std::vector<char> in_cone(num_qubits, 0);
    for (int q : support) {
        if (q < 0 || q >= num_qubits) {
            throw std::invalid_argument("compute_lightcone: support qubit " + std::to_string(q) + " out of range");
        }
        in_cone[q] = 1;
    }
    Lightcone cone;
    for (int layer = depth - 1; layer >= 0; --layer) {
        std::vector<BlockPlacement> hit;
        for (const auto &pl : placements) {
            if (pl.layer == layer && (in_cone[pl.a] || in_cone[pl.b])) {
                hit.push_back(pl);
            }
        }
        for (const auto &pl : hit) {
            in_cone[pl.a] = 1;
            in_cone[pl.b] = 1;
            cone.bricks.push_back(pl);
        }
    }
    for (int q = 0; q < num_qubits; ++q) {
        if (in_cone[q]) {
            cone.qubits.push_back(q);
        }
    }
    return cone;
}

Lightcone compute_lightcone(const LocalObservable &obs, int num_qubits, int depth,
                            const std::vector<BlockPlacement> &placements) {
    return compute_lightcone(obs.support, num_qubits, depth, placements);
}

namespace {

bool is_real(const ComplexMatrix &m) {
    return (m.array().imag() == 0.0).all();
}

// Heisenberg sweep of `x` through the cone; `Matrix` is ComplexMatrix, or RealMatrix when every gate is real.
template <typename Matrix>
std::vector<int> sweep(Matrix &x, std::vector<int> support, const Lightcone &cone, const std::vector<Matrix> &gates) {
    auto position = [&](int q) {
        return static_cast<int>(std::lower_bound(support.begin(), support.end(), q) - support.begin());
    };
    auto contains = [&](int q) { return std::binary_search(support.begin(), support.end(), q); };

    size_t i = 0;
    while (i < cone.bricks.size()) {
        const int layer = cone.bricks[i].layer;
        size_t end = i;
        while (end < cone.bricks.size() && cone.bricks[end].layer == layer) {
            ++end;
        }
        // Bricks within a layer commute; absorb those that do not grow the support first.
        std::vector<size_t> group(end - i);
        std::iota(group.begin(), group.end(), i);
        std::stable_partition(group.begin(), group.end(), [&](size_t k) {
            return contains(cone.bricks[k].a) && contains(cone.bricks[k].b);
        });
        for (size_t k : group) {
            const auto &pl = cone.bricks[k];
            if (!contains(pl.a) && !contains(pl.b)) {
                throw std::invalid_argument("contract: lightcone brick does not touch the observable's cone");
            }
            for (int q : {pl.a, pl.b}) {
                if (!contains(q)) {
                    int pos = position(q);
                    x = kernels::insert_identity(x, static_cast<int>(support.size()), pos);
                    support.insert(support.begin() + pos, q);
                }
            }
            kernels::conjugate_two_qubit(x, static_cast<int>(support.size()), gates[k], position(pl.a),
                                         position(pl.b));
        }
        i = end;
    }
    return support;
}

}  // namespace

ReducedOperator contract(const LocalObservable &obs, const ParamTensor &theta, const BrickTemplate &tmpl,
                         const Lightcone &cone) {
    if (theta.params_per_brick() != tmpl.num_params()) {
        throw std::invalid_argument("contract: theta does not match the brick template");
    }
    for (int q : obs.support) {
        if (!std::binary_search(cone.qubits.begin(), cone.qubits.end(), q)) {
            throw std::invalid_argument("contract: observable support is not inside the lightcone");
        }
    }
    std::vector<ComplexMatrix> gates;
    gates.reserve(cone.bricks.size());
    bool real = is_real(obs.matrix);
    for (const auto &pl : cone.bricks) {
        gates.push_back(brick_unitary(tmpl, theta.brick(pl.block, pl.layer)));
        real = real && is_real(gates.back());
    }
    std::vector<int> support;
    ComplexMatrix x;
    if (real) {
        std::vector<RealMatrix> real_gates;
        real_gates.reserve(gates.size());
        for (const auto &g : gates) {
            real_gates.push_back(g.real());
        }
        RealMatrix xr = obs.matrix.real();
        support = sweep(xr, obs.support, cone, real_gates);
        x = xr.cast<cplx>();
    } else {
        x = obs.matrix;
        support = sweep(x, obs.support, cone, gates);
    }
    if (support != cone.qubits) {
        throw std::invalid_argument("contract: lightcone was not computed for this observable");
    }
    return {std::move(support), std::move(x)};
}

std::vector<FusedTerm> fuse_by_lightcone(const ObservableSum &obs, int num_qubits, int depth) {
    obs.validate();
    const auto placements = layout(num_qubits, depth);
    std::vector<FusedTerm> fused;
    std::map<std::vector<int>, size_t> by_qubits;
    for (size_t t = 0; t < obs.terms.size(); ++t) {
        const auto &term = obs.terms[t];
        for (int q : term.support) {
            if (q < 0 || q >= num_qubits) {
                throw std::invalid_argument("observable support qubit " + std::to_string(q) + " out of range");
            }
        }
        Lightcone cone = compute_lightcone(term, num_qubits, depth, placements);
        auto it = by_qubits.find(cone.qubits);
        if (it != by_qubits.end() && fused[it->second].cone == cone) {
            FusedTerm &f = fused[it->second];
            std::vector<int> merged;
            std::set_union(f.observable.support.begin(), f.observable.support.end(), term.support.begin(),
                           term.support.end(), std::back_inserter(merged));
            ComplexMatrix lhs = kernels::embed(f.observable.matrix, f.observable.support, merged);
            ComplexMatrix rhs = kernels::embed(term.matrix, term.support, merged);
            f.observable.support = std::move(merged);
            f.observable.matrix = lhs + term.weight * rhs;
            f.members.push_back(t);
            continue;
        }
        FusedTerm f{LocalObservable{term.support, term.weight * term.matrix, 1.0}, std::move(cone), {t}};
        by_qubits.emplace(f.cone.qubits, fused.size());
        fused.push_back(std::move(f));
    }
    return fused;
}

double evaluate_exact_product(const ObservableSum &obs, const ParamTensor &theta, const BrickTemplate &tmpl,
                              const ProductState &input) {
    if (input.num_qubits() != theta.num_qubits()) {
        throw std::invalid_argument("evaluate_exact_product: input/theta qubit count mismatch");
    }
    double total = 0.0;
    for (const auto &f : fuse_by_lightcone(obs, theta.num_qubits(), theta.depth())) {
        ReducedOperator w = contract(f.observable, theta, tmpl, f.cone);
        ComplexVector phi = ComplexVector::Ones(1);
        for (int q : w.support) {
            phi = kron(phi, ComplexVector(input.factor(q)));
        }
        total += phi.dot(w.matrix * phi).real();
    }
    return total;
}

}  // namespace also
