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

#include "also/linalg.h"

#include <gtest/gtest.h>

#include "also/qsim.h"
#include "also/rng.h"
#include "oracle.h"

namespace also {
namespace {

ComplexMatrix random_matrix(int dim, Rng &rng) {
    ComplexMatrix m(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            m(i, j) = cplx(rng.normal(), rng.normal());
        }
    }
    return m;
}

ComplexMatrix random_hermitian(int dim, Rng &rng) {
    ComplexMatrix m = random_matrix(dim, rng);
    return (m + m.adjoint()) / 2.0;
}

ComplexMatrix random_unitary(int dim, Rng &rng) {
    Eigen::HouseholderQR<ComplexMatrix> qr(random_matrix(dim, rng));
    return qr.householderQ();
}

TEST(Linalg, KronMatchesOracle) {
    Rng rng(1);
    ComplexMatrix a = random_matrix(2, rng), b = random_matrix(4, rng);
    EXPECT_LT((kron(a, b) - oracle::kron(oracle::Mat(a), oracle::Mat(b))).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Linalg, UnitaryAndHermitianChecks) {
    EXPECT_TRUE(is_unitary(gates::H()));
    EXPECT_TRUE(is_unitary(gates::CNOT()));
    EXPECT_FALSE(is_unitary(2.0 * gates::H()));
    EXPECT_TRUE(is_hermitian(gates::Y()));
    EXPECT_FALSE(is_hermitian(gates::S()));
}

TEST(Linalg, SpectralNormOfDiagonal) {
    ComplexMatrix m = ComplexMatrix::Zero(3, 3);
    m(0, 0) = 0.5;
    m(1, 1) = -2.0;
    m(2, 2) = 1.0;
    EXPECT_NEAR(spectral_norm(m), 2.0, 1e-14);
}

TEST(Linalg, TraceProducts) {
    Rng rng(2);
    ComplexMatrix a = random_hermitian(8, rng), b = random_hermitian(8, rng);
    const cplx direct = (a * b).trace();
    EXPECT_NEAR(std::abs(trace_product(a, b) - direct), 0.0, 1e-12);
    EXPECT_NEAR(trace_product_hermitian(a, b), direct.real(), 1e-12);
}

TEST(Kernels, ApplyToVectorMatchesFullEmbedding) {
    Rng rng(3);
    const int n = 4;
    ComplexVector v(16);
    for (int i = 0; i < 16; ++i) {
        v(i) = cplx(rng.normal(), rng.normal());
    }
    const ComplexMatrix g2 = random_unitary(4, rng);
    const ComplexMatrix g1 = random_unitary(2, rng);
    for (auto targets : std::vector<std::vector<int>>{{0, 1}, {3, 0}, {2, 1}, {1, 3}}) {
        ComplexVector w = v;
        kernels::apply_to_vector(std::span<cplx>(w.data(), w.size()), n, g2, targets);
        const oracle::Vec expect = oracle::embed(g2, targets, n) * v;
        EXPECT_LT((w - expect).cwiseAbs().maxCoeff(), 1e-13);
    }
    ComplexVector w = v;
    const int t[1] = {2};
    kernels::apply_to_vector(std::span<cplx>(w.data(), w.size()), n, g1, t);
    EXPECT_LT((w - oracle::embed(g1, {2}, n) * v).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(Kernels, ConjugationMatchesOracle) {
    Rng rng(4);
    const int m = 3;
    ComplexMatrix x = random_hermitian(8, rng);
    const ComplexMatrix g = random_unitary(4, rng);
    for (auto pq : std::vector<std::pair<int, int>>{{0, 1}, {2, 0}, {1, 2}}) {
        ComplexMatrix y = x;
        kernels::conjugate_two_qubit(y, m, g, pq.first, pq.second);
        const oracle::Mat full = oracle::embed(g, {pq.first, pq.second}, m);
        EXPECT_LT((y - full.adjoint() * x * full).cwiseAbs().maxCoeff(), 1e-12);
    }
    const ComplexMatrix h = random_unitary(2, rng);
    ComplexMatrix y = x;
    kernels::conjugate_one_qubit(y, m, h, 1);
    const oracle::Mat full = oracle::embed(h, {1}, m);
    EXPECT_LT((y - full.adjoint() * x * full).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Kernels, RealOverloadsMatchComplex) {
    Rng rng(6);
    const int m = 3;
    const ComplexMatrix x = random_hermitian(8, rng).real().cast<cplx>();
    const RealMatrix g = random_unitary(4, rng).real();
    for (auto pq : std::vector<std::pair<int, int>>{{0, 1}, {2, 0}, {1, 2}}) {
        RealMatrix y = x.real();
        kernels::conjugate_two_qubit(y, m, g, pq.first, pq.second);
        const oracle::Mat full = oracle::embed(ComplexMatrix(g.cast<cplx>()), {pq.first, pq.second}, m);
        EXPECT_LT((y.cast<cplx>() - full.adjoint() * x * full).cwiseAbs().maxCoeff(), 1e-12);
    }
    const RealMatrix w = kernels::insert_identity(RealMatrix(x.real()), 3, 1);
    EXPECT_LT((w.cast<cplx>() - oracle::embed(x, {0, 2, 3}, 4)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Kernels, InsertIdentityAndEmbed) {
    Rng rng(5);
    ComplexMatrix x = random_matrix(4, rng);
    // Identity inserted at position 1 of a 2-qubit operator: x acts on new positions {0, 2}.
    const ComplexMatrix y = kernels::insert_identity(x, 2, 1);
    EXPECT_LT((y - oracle::embed(x, {0, 2}, 3)).cwiseAbs().maxCoeff(), 1e-14);
    const ComplexMatrix z = kernels::insert_identity(x, 2, 2);
    EXPECT_LT((z - oracle::kron(x, oracle::eye(2))).cwiseAbs().maxCoeff(), 1e-14);

    const int op_support[2] = {3, 7};
    const int target[3] = {3, 5, 7};
    const ComplexMatrix e = kernels::embed(x, op_support, target);
    EXPECT_LT((e - oracle::embed(x, {0, 2}, 3)).cwiseAbs().maxCoeff(), 1e-14);
}

}  // namespace
}  // namespace also
