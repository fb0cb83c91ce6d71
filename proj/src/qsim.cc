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

#include "also/qsim.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <string>

namespace also {

namespace {

std::atomic<int> g_dense_limit{kDefaultDenseLimit};

void check_targets(int num_qubits, std::span<const int> targets) {
    for (size_t i = 0; i < targets.size(); ++i) {
        if (targets[i] < 0 || targets[i] >= num_qubits) {
            throw std::invalid_argument("qubit index " + std::to_string(targets[i]) + " out of range for " +
                                        std::to_string(num_qubits) + " qubits");
        }
        for (size_t j = 0; j < i; ++j) {
            if (targets[i] == targets[j]) {
                throw std::invalid_argument("duplicate target qubit " + std::to_string(targets[i]));
            }
        }
    }
}

void check_sorted_support(int num_qubits, std::span<const int> support) {
    check_targets(num_qubits, support);
    if (!std::is_sorted(support.begin(), support.end())) {
        throw std::invalid_argument("support must be sorted ascending");
    }
}

}  // namespace

int dense_limit() {
    return g_dense_limit.load();
}

void set_dense_limit(int n) {
    if (n < 1 || n > 30) {
        throw std::invalid_argument("dense limit must lie in [1, 30]");
    }
    g_dense_limit.store(n);
}

PureState::PureState(int num_qubits, ComplexVector amplitudes) : n_(num_qubits), amps_(std::move(amplitudes)) {
    if (n_ < 1) {
        throw std::invalid_argument("PureState needs at least one qubit");
    }
    if (n_ > dense_limit()) {
        throw std::invalid_argument("PureState of " + std::to_string(n_) + " qubits exceeds the dense limit of " +
                                    std::to_string(dense_limit()));
    }
    if (amps_.size() != (Eigen::Index{1} << n_)) {
        throw std::invalid_argument("amplitude vector length is not 2^n");
    }
    if (std::abs(amps_.squaredNorm() - 1.0) > kNormTolerance) {
        throw std::invalid_argument("PureState is not normalized");
    }
}

PureState PureState::zero(int num_qubits) {
    return basis(num_qubits, 0);
}

PureState PureState::basis(int num_qubits, uint64_t index) {
    if (num_qubits < 1 || num_qubits > dense_limit()) {
        throw std::invalid_argument("PureState::basis: qubit count outside [1, dense limit]");
    }
    ComplexVector v = ComplexVector::Zero(Eigen::Index{1} << num_qubits);
    if (index >= static_cast<uint64_t>(v.size())) {
        throw std::invalid_argument("PureState::basis: index out of range");
    }
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return PureState(num_qubits, std::move(v));
}

PureState PureState::random(int num_qubits, Rng &rng) {
    if (num_qubits < 1 || num_qubits > dense_limit()) {
        throw std::invalid_argument("PureState::random: qubit count outside [1, dense limit]");
    }
    ComplexVector v(Eigen::Index{1} << num_qubits);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        double re = rng.normal();
        double im = rng.normal();
        v(i) = cplx(re, im);
    }
    v /= v.norm();
    return PureState(num_qubits, std::move(v));
}

ProductState::ProductState(std::vector<Eigen::Vector2cd> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) {
        throw std::invalid_argument("ProductState needs at least one factor");
    }
    for (const auto &f : factors_) {
        if (std::abs(f.squaredNorm() - 1.0) > 1e-12) {
            throw std::invalid_argument("ProductState factor is not normalized");
        }
    }
}

ProductState ProductState::basis(std::span<const int> bits) {
    std::vector<Eigen::Vector2cd> factors;
    factors.reserve(bits.size());
    for (int b : bits) {
        if (b != 0 && b != 1) {
            throw std::invalid_argument("ProductState::basis: bits must be 0 or 1");
        }
        factors.push_back(b == 0 ? Eigen::Vector2cd(1.0, 0.0) : Eigen::Vector2cd(0.0, 1.0));
    }
    return ProductState(std::move(factors));
}

ProductState ProductState::zero(int num_qubits) {
    std::vector<int> bits(num_qubits, 0);
    return basis(bits);
}

namespace gates {

ComplexMatrix I() {
    return ComplexMatrix::Identity(2, 2);
}

ComplexMatrix X() {
    ComplexMatrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

ComplexMatrix Y() {
    const cplx i(0, 1);
    ComplexMatrix m(2, 2);
    m << 0, -i, i, 0;
    return m;
}

ComplexMatrix Z() {
    ComplexMatrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

ComplexMatrix H() {
    const double s = 1.0 / std::sqrt(2.0);
    ComplexMatrix m(2, 2);
    m << s, s, s, -s;
    return m;
}

ComplexMatrix S() {
    ComplexMatrix m(2, 2);
    m << 1, 0, 0, cplx(0, 1);
    return m;
}

ComplexMatrix CNOT() {
    ComplexMatrix m = ComplexMatrix::Zero(4, 4);
    m(0, 0) = 1;
    m(1, 1) = 1;
    m(2, 3) = 1;
    m(3, 2) = 1;
    return m;
}

ComplexMatrix CZ() {
    ComplexMatrix m = ComplexMatrix::Identity(4, 4);
    m(3, 3) = -1;
    return m;
}

ComplexMatrix pauli(Pauli p) {
    switch (p) {
        case Pauli::I:
            return I();
        case Pauli::X:
            return X();
        case Pauli::Y:
            return Y();
        case Pauli::Z:
            return Z();
    }
    throw std::invalid_argument("unknown Pauli");
}

ComplexMatrix rotation(Pauli p, double angle) {
    return std::cos(angle / 2) * I() + cplx(0, std::sin(angle / 2)) * pauli(p);
}

ComplexMatrix RX(double angle) {
    return rotation(Pauli::X, angle);
}

ComplexMatrix RY(double angle) {
    return rotation(Pauli::Y, angle);
}

ComplexMatrix RZ(double angle) {
    return rotation(Pauli::Z, angle);
}

ComplexMatrix projector0() {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 0) = 1;
    return m;
}

}  // namespace gates

PureState apply_gate(const PureState &state, const ComplexMatrix &gate, std::span<const int> targets) {
    const int n = state.num_qubits();
    check_targets(n, targets);
    const Eigen::Index local_dim = Eigen::Index{1} << targets.size();
    if (gate.rows() != local_dim || gate.cols() != local_dim) {
        throw std::invalid_argument("gate dimension does not match 2^|targets|");
    }
    if (!is_unitary(gate)) {
        throw std::invalid_argument("apply_gate: gate is not unitary");
    }
    ComplexVector amps = state.amplitudes();
    kernels::apply_to_vector(std::span<cplx>(amps.data(), amps.size()), n, gate, targets);
    return PureState(n, std::move(amps));
}

double expectation(const PureState &state, const ComplexMatrix &obs, std::span<const int> targets) {
    const int n = state.num_qubits();
    check_targets(n, targets);
    const Eigen::Index local_dim = Eigen::Index{1} << targets.size();
    if (obs.rows() != local_dim || obs.cols() != local_dim) {
        throw std::invalid_argument("observable dimension does not match 2^|targets|");
    }
    if (!is_hermitian(obs)) {
        throw std::invalid_argument("expectation: observable is not Hermitian");
    }
    ComplexVector applied = state.amplitudes();
    kernels::apply_to_vector(std::span<cplx>(applied.data(), applied.size()), n, obs, targets);
    cplx value = state.amplitudes().dot(applied);
    if (std::abs(value.imag()) > 1e-10) {
        throw std::runtime_error("expectation: imaginary residue above 1e-10");
    }
    return value.real();
}

OutcomeSampler::OutcomeSampler(const ComplexVector &amplitudes) : cdf_(amplitudes.size()) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < amplitudes.size(); ++i) {
        acc += std::norm(amplitudes(i));
        cdf_[i] = acc;
    }
}

uint64_t OutcomeSampler::sample(Rng &rng) const {
    const double u = rng.uniform() * cdf_.back();
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    if (it == cdf_.end()) {
        --it;
    }
    return static_cast<uint64_t>(it - cdf_.begin());
}

std::vector<uint64_t> sample_computational(const PureState &state, Rng &rng, size_t shots) {
    if (shots < 1) {
        throw std::invalid_argument("sample_computational: shots must be >= 1");
    }
    OutcomeSampler sampler(state.amplitudes());
    std::vector<uint64_t> out(shots);
    for (auto &o : out) {
        o = sampler.sample(rng);
    }
    return out;
}

PureState dense_from_product(const ProductState &state) {
    const int n = state.num_qubits();
    if (n > dense_limit()) {
        throw std::invalid_argument("dense_from_product: " + std::to_string(n) + " qubits exceeds the dense limit");
    }
    ComplexVector v = state.factor(0);
    for (int q = 1; q < n; ++q) {
        v = kron(v, ComplexVector(state.factor(q)));
    }
    return PureState(n, std::move(v));
}

ComplexMatrix reduced_density_matrix(const PureState &state, std::span<const int> support) {
    const int n = state.num_qubits();
    check_sorted_support(n, support);
    const int k = static_cast<int>(support.size());
    const Eigen::Index local_dim = Eigen::Index{1} << k;
    const Eigen::Index rest_dim = Eigen::Index{1} << (n - k);
    std::vector<int> rest;
    for (int q = 0; q < n; ++q) {
        if (!std::binary_search(support.begin(), support.end(), q)) {
            rest.push_back(q);
        }
    }
    // psi reshaped as (local, rest).
    Eigen::MatrixXcd psi(local_dim, rest_dim);
    const auto &amps = state.amplitudes();
    for (Eigen::Index idx = 0; idx < amps.size(); ++idx) {
        Eigen::Index local = 0;
        for (int t = 0; t < k; ++t) {
            local = (local << 1) | outcome_bit(idx, n, support[t]);
        }
        Eigen::Index r = 0;
        for (int q : rest) {
            r = (r << 1) | outcome_bit(idx, n, q);
        }
        psi(local, r) = amps(idx);
    }
    ComplexMatrix rho = psi * psi.adjoint();
    return rho;
}

ComplexMatrix reduced_density_matrix(const ProductState &state, std::span<const int> support) {
    check_sorted_support(state.num_qubits(), support);
    ComplexVector v = ComplexVector::Ones(1);
    for (int q : support) {
        v = kron(v, ComplexVector(state.factor(q)));
    }
    return v * v.adjoint();
}

}  // namespace also
