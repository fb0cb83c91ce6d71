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

#ifndef ALSO_LINALG_H
#define ALSO_LINALG_H

#include <Eigen/Dense>
#include <complex>
#include <span>

namespace also {

using cplx = std::complex<double>;

/// Dense complex matrix, row-major. Houses gates, observables and reduced
/// operators alike; unitarity / hermiticity are checked, not encoded in type.
using ComplexMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexVector = Eigen::Matrix<cplx, Eigen::Dynamic, 1>;
using RealMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

constexpr double kUnitaryTolerance = 1e-10;
constexpr double kHermitianTolerance = 1e-12;

ComplexMatrix dagger(const ComplexMatrix &m);
ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexVector kron(const ComplexVector &a, const ComplexVector &b);

/// max_ij |m_ij|
double max_abs(const ComplexMatrix &m);

bool is_unitary(const ComplexMatrix &m, double tol = kUnitaryTolerance);
bool is_hermitian(const ComplexMatrix &m, double tol = kHermitianTolerance);

/// Operator 2-norm of a Hermitian matrix (largest |eigenvalue|).
double spectral_norm(const ComplexMatrix &hermitian);

/// tr(a * b).
cplx trace_product(const ComplexMatrix &a, const ComplexMatrix &b);

/// Real part of tr(a * b) for Hermitian a and b; conj(b) elementwise dot a.
double trace_product_hermitian(const ComplexMatrix &a, const ComplexMatrix &b);

namespace kernels {

/// Applies a 2^k x 2^k `gate` to `targets` of an m-qubit amplitude array.
/// Position 0 is the most significant bit of the index; targets[0] is the
/// most significant bit of the gate's local index.
void apply_to_vector(std::span<cplx> amps, int num_qubits, const ComplexMatrix &gate, std::span<const int> targets);

/// x <- g^dagger x g for a 4x4 `g` on local positions (p, q) of an m-qubit operator.
void conjugate_two_qubit(ComplexMatrix &x, int num_qubits, const ComplexMatrix &g, int p, int q);
void conjugate_two_qubit(RealMatrix &x, int num_qubits, const RealMatrix &g, int p, int q);

/// x <- g^dagger x g for a 2x2 `g` on local position p.
void conjugate_one_qubit(ComplexMatrix &x, int num_qubits, const ComplexMatrix &g, int p);

/// Returns x (on m qubits) tensored with identity inserted at local position `pos`,
/// giving an (m+1)-qubit operator.
ComplexMatrix insert_identity(const ComplexMatrix &x, int num_qubits, int pos);
RealMatrix insert_identity(const RealMatrix &x, int num_qubits, int pos);

/// Operator on `target_support` equal to `op` (on `op_support`, a subset) tensor identity.
/// Both supports must be sorted ascending.
ComplexMatrix embed(const ComplexMatrix &op, std::span<const int> op_support, std::span<const int> target_support);

}  // namespace kernels

}  // namespace also

#endif
