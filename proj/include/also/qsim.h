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

#ifndef ALSO_QSIM_H
#define ALSO_QSIM_H

#include <cstdint>
#include <span>
#include <vector>

#include "also/linalg.h"
#include "also/rng.h"

namespace also {

constexpr int kDefaultDenseLimit = 20;

/// Largest qubit count a PureState may hold. Process-wide, default 20.
int dense_limit();
void set_dense_limit(int n);

constexpr double kNormTolerance = 1e-10;

/// Dense n-qubit statevector. Qubit 0 is the most significant bit of the
/// amplitude index.
class PureState {
   public:
    /// Throws std::invalid_argument if n exceeds the dense limit, the vector
    /// length is not 2^n, or the state is not normalized within 1e-10.
    PureState(int num_qubits, ComplexVector amplitudes);

    static PureState zero(int num_qubits);
    static PureState basis(int num_qubits, uint64_t index);
    /// Haar-random state.
    static PureState random(int num_qubits, Rng &rng);

    int num_qubits() const {
        return n_;
    }
    const ComplexVector &amplitudes() const {
        return amps_;
    }
    double norm() const {
        return amps_.norm();
    }

   private:
    int n_;
    ComplexVector amps_;
};

/// Tensor product of single-qubit pure states; any number of qubits.
class ProductState {
   public:
    explicit ProductState(std::vector<Eigen::Vector2cd> factors);

    /// Computational basis state; bits[q] is the value of qubit q.
    static ProductState basis(std::span<const int> bits);
    static ProductState zero(int num_qubits);

    int num_qubits() const {
        return static_cast<int>(factors_.size());
    }
    const std::vector<Eigen::Vector2cd> &factors() const {
        return factors_;
    }
    const Eigen::Vector2cd &factor(int q) const {
        return factors_[q];
    }

   private:
    std::vector<Eigen::Vector2cd> factors_;
};

enum class Pauli { I, X, Y, Z };

namespace gates {

ComplexMatrix I();
ComplexMatrix X();
ComplexMatrix Y();
ComplexMatrix Z();
ComplexMatrix H();
ComplexMatrix S();
/// Control is the first (most significant) qubit.
ComplexMatrix CNOT();
ComplexMatrix CZ();
ComplexMatrix pauli(Pauli p);
/// cos(angle/2) I + i sin(angle/2) P.
ComplexMatrix rotation(Pauli p, double angle);
ComplexMatrix RX(double angle);
ComplexMatrix RY(double angle);
ComplexMatrix RZ(double angle);
/// |0><0|
ComplexMatrix projector0();

}  // namespace gates

/// Returns the state with `gate` applied to `targets` (targets[0] = gate MSB).
PureState apply_gate(const PureState &state, const ComplexMatrix &gate, std::span<const int> targets);

/// <psi| obs[targets] |psi>; obs must be Hermitian.
double expectation(const PureState &state, const ComplexMatrix &obs, std::span<const int> targets);

/// i.i.d. computational basis outcomes. Each outcome is the amplitude index
/// (qubit 0 = most significant bit).
std::vector<uint64_t> sample_computational(const PureState &state, Rng &rng, size_t shots);

PureState dense_from_product(const ProductState &state);

/// Bit of qubit q in outcome `index` of an n-qubit register.
inline int outcome_bit(uint64_t index, int num_qubits, int q) {
    return static_cast<int>((index >> (num_qubits - 1 - q)) & 1);
}

/// Reduced density matrix on an ascending `support`.
ComplexMatrix reduced_density_matrix(const PureState &state, std::span<const int> support);
ComplexMatrix reduced_density_matrix(const ProductState &state, std::span<const int> support);

/// Cumulative distribution of |amplitude|^2, used for repeated sampling.
class OutcomeSampler {
   public:
    explicit OutcomeSampler(const ComplexVector &amplitudes);
    uint64_t sample(Rng &rng) const;

   private:
    std::vector<double> cdf_;
};

}  // namespace also

#endif
