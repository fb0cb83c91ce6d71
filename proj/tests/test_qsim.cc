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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracle.h"

namespace also {
namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

ComplexVector random_vector(int n, Rng &rng) {
    return PureState::random(n, rng).amplitudes();
}

TEST(Gates, MatchTextbookMatrices) {
    EXPECT_LT((gates::H() - oracle::mat2(kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2)).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT((gates::S() - oracle::mat2(1, 0, 0, cplx(0, 1))).cwiseAbs().maxCoeff(), 0.0 + 1e-15);
    EXPECT_LT((gates::CNOT() - oracle::cnot()).cwiseAbs().maxCoeff(), 1e-15);
    // Y = iXZ
    EXPECT_LT((gates::Y() - cplx(0, 1) * gates::X() * gates::Z()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Gates, RotationSignConvention) {
    const double t = 0.7;
    for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) {
        const ComplexMatrix expect = std::cos(t / 2) * gates::I() + cplx(0, std::sin(t / 2)) * gates::pauli(p);
        EXPECT_LT((gates::rotation(p, t) - expect).cwiseAbs().maxCoeff(), 1e-15);
    }
    EXPECT_LT((gates::RY(t) - oracle::ry(t)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(ApplyGate, HadamardOnZero) {
    const int t[1] = {0};
    const PureState s = apply_gate(PureState::zero(1), gates::H(), t);
    EXPECT_NEAR(std::abs(s.amplitudes()(0) - kInvSqrt2), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(s.amplitudes()(1) - kInvSqrt2), 0.0, 1e-15);
}

TEST(ApplyGate, CnotControlIsQubitZero) {
    const int t[2] = {0, 1};
    // |10>: qubit 0 is the most significant bit -> index 2.
    const PureState s = apply_gate(PureState::basis(2, 2), gates::CNOT(), t);
    EXPECT_NEAR(std::abs(s.amplitudes()(3)), 1.0, 1e-15);
}

TEST(ApplyGate, RotationMatchesTwoByTwoOracle) {
    const int t[1] = {0};
    const PureState s = apply_gate(PureState::zero(1), gates::RY(std::numbers::pi / 2), t);
    // Direct 2x2 product: [[c, s], [-s, c]] (1, 0)^T = (c, -s).
    const double c = std::cos(std::numbers::pi / 4), sn = std::sin(std::numbers::pi / 4);
    EXPECT_NEAR(std::abs(s.amplitudes()(0) - c), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(s.amplitudes()(1) + sn), 0.0, 1e-15);
}

TEST(ApplyGate, RejectsBadInput) {
    const PureState s = PureState::zero(2);
    const int dup[2] = {1, 1};
    const int out_of_range[1] = {2};
    const int one[1] = {0};
    EXPECT_THROW(apply_gate(s, gates::CNOT(), dup), std::invalid_argument);
    EXPECT_THROW(apply_gate(s, gates::H(), out_of_range), std::invalid_argument);
    EXPECT_THROW(apply_gate(s, gates::CNOT(), one), std::invalid_argument);
    EXPECT_THROW(apply_gate(s, 2.0 * gates::H(), one), std::invalid_argument);
}

TEST(ApplyGate, NormPreservationAndRoundTrip) {
    Rng rng(11);
    PureState s = PureState::random(5, rng);
    const PureState start = s;
    std::vector<std::pair<ComplexMatrix, std::vector<int>>> applied;
    for (int k = 0; k < 200; ++k) {
        const int a = static_cast<int>(rng.below(5));
        int b = static_cast<int>(rng.below(4));
        b = b >= a ? b + 1 : b;
        ComplexMatrix g = k % 2 == 0 ? ComplexMatrix(gates::CNOT()) : kron(gates::RY(rng.uniform() * 6), gates::RZ(1.0));
        std::vector<int> t = {a, b};
        s = apply_gate(s, g, t);
        applied.emplace_back(g, t);
        ASSERT_NEAR(s.norm(), 1.0, 1e-9);
    }
    for (auto it = applied.rbegin(); it != applied.rend(); ++it) {
        s = apply_gate(s, it->first.adjoint(), it->second);
    }
    EXPECT_LT((s.amplitudes() - start.amplitudes()).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(PureStateTest, Validation) {
    EXPECT_THROW(PureState(2, ComplexVector::Zero(4)), std::invalid_argument);
    EXPECT_THROW(PureState(2, ComplexVector::Ones(3)), std::invalid_argument);
    EXPECT_THROW(PureState::zero(dense_limit() + 1), std::invalid_argument);
    std::vector<Eigen::Vector2cd> bad = {Eigen::Vector2cd(1.0, 1.0)};
    EXPECT_THROW(ProductState{bad}, std::invalid_argument);
}

TEST(Expectation, Examples) {
    const int t[1] = {0};
    EXPECT_DOUBLE_EQ(expectation(PureState::zero(1), gates::Z(), t), 1.0);
    const PureState plus = apply_gate(PureState::zero(1), gates::H(), t);
    EXPECT_NEAR(expectation(plus, gates::Z(), t), 0.0, 1e-15);
    EXPECT_THROW(expectation(plus, gates::S(), t), std::invalid_argument);
}

TEST(Expectation, MatchesDensityMatrixTraceOracle) {
    Rng rng(12);
    const ComplexVector psi = random_vector(3, rng);
    const PureState s(3, psi);
    const oracle::Mat rho = psi * psi.adjoint();
    const oracle::Mat proj = oracle::embed(oracle::mat2(1, 0, 0, 0), {1}, 3);
    const double expect = (proj * rho).trace().real();
    const int t[1] = {1};
    EXPECT_NEAR(expectation(s, gates::projector0(), t), expect, 1e-12);
}

TEST(Sampling, BasisStateIsDeterministic) {
    Rng rng(1);
    for (uint64_t o : sample_computational(PureState::basis(2, 1), rng, 1000)) {
        ASSERT_EQ(o, 1u);
    }
}

TEST(Sampling, HadamardIsFair) {
    Rng rng(2);
    const int t[1] = {0};
    const auto out = sample_computational(apply_gate(PureState::zero(1), gates::H(), t), rng, 100000);
    double zeros = 0;
    for (auto o : out) {
        zeros += (o == 0);
    }
    EXPECT_NEAR(zeros / out.size(), 0.5, 0.01);
}

TEST(Sampling, ChiSquareAgainstAmplitudes) {
    Rng rng(3);
    const PureState s = PureState::random(3, rng);
    const size_t shots = 1000000;
    std::vector<double> counts(8, 0.0);
    for (auto o : sample_computational(s, rng, shots)) {
        counts[o] += 1;
    }
    double chi2 = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double expect = std::norm(s.amplitudes()(i)) * shots;
        chi2 += (counts[i] - expect) * (counts[i] - expect) / expect;
    }
    // 7 degrees of freedom; the 99.9% quantile is 24.3.
    EXPECT_LT(chi2, 24.3);
}

TEST(Sampling, MarginalMatchesExpectation) {
    Rng rng(4);
    const PureState s = PureState::random(4, rng);
    const size_t shots = 1000000;
    for (int q = 0; q < 4; ++q) {
        double zeros = 0.0;
        for (auto o : sample_computational(s, rng, shots)) {
            zeros += outcome_bit(o, 4, q) == 0;
        }
        const int t[1] = {q};
        const double p = expectation(s, gates::projector0(), t);
        const double se = std::sqrt(p * (1 - p) / shots);
        EXPECT_LT(std::abs(zeros / shots - p), 5 * se);
    }
}

TEST(DenseFromProduct, Examples) {
    const PureState zero = dense_from_product(ProductState::zero(3));
    EXPECT_DOUBLE_EQ(std::abs(zero.amplitudes()(0)), 1.0);
    const ProductState pp({Eigen::Vector2cd(kInvSqrt2, kInvSqrt2), Eigen::Vector2cd(1.0, 0.0)});
    const ComplexVector a = dense_from_product(pp).amplitudes();
    EXPECT_NEAR(std::abs(a(0) - kInvSqrt2), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(a(1)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(a(2) - kInvSqrt2), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(a(3)), 0.0, 1e-15);
}

TEST(DenseFromProduct, MatchesIterativeKronecker) {
    Rng rng(5);
    std::vector<Eigen::Vector2cd> factors;
    oracle::Vec expect = oracle::Vec::Ones(1);
    for (int q = 0; q < 4; ++q) {
        Eigen::Vector2cd f(cplx(rng.normal(), rng.normal()), cplx(rng.normal(), rng.normal()));
        f.normalize();
        factors.push_back(f);
        expect = oracle::kron_vec(expect, oracle::Vec(f));
    }
    const ComplexVector got = dense_from_product(ProductState(factors)).amplitudes();
    EXPECT_LT((got - expect).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(ReducedDensity, MatchesPartialTraceOracle) {
    Rng rng(6);
    const ComplexVector psi = random_vector(5, rng);
    const std::vector<int> keep = {0, 2, 4};
    const ComplexMatrix got = reduced_density_matrix(PureState(5, psi), keep);
    EXPECT_LT((got - oracle::reduced(psi, 5, keep)).cwiseAbs().maxCoeff(), 1e-13);

    std::vector<Eigen::Vector2cd> factors;
    for (int q = 0; q < 5; ++q) {
        Eigen::Vector2cd f(cplx(rng.normal(), rng.normal()), cplx(rng.normal(), rng.normal()));
        factors.push_back(f.normalized());
    }
    const ProductState prod(factors);
    const ComplexMatrix a = reduced_density_matrix(prod, keep);
    const ComplexMatrix b = reduced_density_matrix(dense_from_product(prod), keep);
    EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-13);
}

}  // namespace
}  // namespace also
