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

#include <gtest/gtest.h>

#include <numbers>
#include <set>

#include "oracle.h"

namespace also {
namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> random_angles(size_t count, Rng &rng) {
    std::vector<double> v(count);
    for (double &x : v) {
        x = rng.uniform() * 2 * kPi;
    }
    return v;
}

TEST(Brick, ZeroAnglesGiveCnot) {
    const auto t = BrickTemplate::ry_cnot_ry();
    const std::vector<double> zeros(4, 0.0);
    EXPECT_LT((brick_unitary(t, zeros) - gates::CNOT()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Brick, SingleAngleMatchesExplicitProduct) {
    const auto t = BrickTemplate::ry_cnot_ry();
    for (int k = 0; k < 4; ++k) {
        std::vector<double> g(4, 0.0);
        g[k] = 0.9;
        EXPECT_LT((brick_unitary(t, g) - oracle::brick(g)).cwiseAbs().maxCoeff(), 1e-14) << "angle " << k;
    }
    Rng rng(1);
    const auto g = random_angles(4, rng);
    EXPECT_LT((brick_unitary(t, g) - oracle::brick(g)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Brick, UnitaryForEveryTemplate) {
    Rng rng(2);
    for (const char *name : {"ry-cnot-ry", "ry-cz-ry", "ryrz-cnot-ryrz"}) {
        const auto t = BrickTemplate::from_name(name);
        for (int rep = 0; rep < 20; ++rep) {
            const ComplexMatrix u = brick_unitary(t, random_angles(t.num_params(), rng));
            EXPECT_LT((u.adjoint() * u - ComplexMatrix::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-12) << name;
        }
    }
}

TEST(Brick, PeriodFourPiInEachAngle) {
    Rng rng(3);
    const auto t = BrickTemplate::ry_cnot_ry();
    const auto g = random_angles(4, rng);
    const ComplexMatrix base = brick_unitary(t, g);
    for (int k = 0; k < 4; ++k) {
        auto shifted = g;
        shifted[k] += 4 * kPi;
        EXPECT_LT((brick_unitary(t, shifted) - base).cwiseAbs().maxCoeff(), 1e-12);
        shifted[k] = g[k] + 2 * kPi;
        EXPECT_LT((brick_unitary(t, shifted) + base).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(Brick, RejectsBadInput) {
    const auto t = BrickTemplate::ry_cnot_ry();
    const std::vector<double> three(3, 0.0);
    EXPECT_THROW(brick_unitary(t, three), std::invalid_argument);
    EXPECT_THROW(BrickTemplate::from_name("nope"), std::invalid_argument);
    // Parameter slots must cover 0..p-1 exactly once.
    EXPECT_THROW(BrickTemplate("gap", {{GateKind::RY, 0, -1, 0}, {GateKind::RY, 1, -1, 2}}), std::invalid_argument);
    EXPECT_THROW(BrickTemplate("dup", {{GateKind::RY, 0, -1, 0}, {GateKind::RY, 1, -1, 0}}), std::invalid_argument);
}

TEST(Layout, Examples) {
    const auto l41 = layout(4, 1);
    ASSERT_EQ(l41.size(), 2u);
    EXPECT_EQ(std::make_pair(l41[0].a, l41[0].b), std::make_pair(0, 1));
    EXPECT_EQ(std::make_pair(l41[1].a, l41[1].b), std::make_pair(2, 3));
    const auto l42 = layout(4, 2);
    ASSERT_EQ(l42.size(), 4u);
    EXPECT_EQ(l42[2].layer, 1);
    EXPECT_EQ(std::make_pair(l42[2].a, l42[2].b), std::make_pair(1, 2));
    EXPECT_EQ(std::make_pair(l42[3].a, l42[3].b), std::make_pair(3, 0));
    const auto l21 = layout(2, 1);
    ASSERT_EQ(l21.size(), 1u);
    EXPECT_EQ(std::make_pair(l21[0].a, l21[0].b), std::make_pair(0, 1));
    EXPECT_THROW(layout(5, 1), std::invalid_argument);
    EXPECT_THROW(layout(4, 0), std::invalid_argument);
}

TEST(Layout, LayersPartitionAndAlternate) {
    for (int n = 2; n <= 12; n += 2) {
        for (int d = 1; d <= 4; ++d) {
            const auto l = layout(n, d);
            ASSERT_EQ(l.size(), static_cast<size_t>(d * n / 2));
            for (int j = 0; j < d; ++j) {
                std::set<int> seen;
                for (const auto &p : l) {
                    if (p.layer != j) {
                        continue;
                    }
                    EXPECT_EQ(p.b, (p.a + 1) % n);
                    EXPECT_EQ(p.a, (2 * p.block + j) % n);
                    seen.insert(p.a);
                    seen.insert(p.b);
                }
                EXPECT_EQ(seen.size(), static_cast<size_t>(n));
            }
            // Layer-major order.
            for (size_t k = 1; k < l.size(); ++k) {
                EXPECT_LE(l[k - 1].layer, l[k].layer);
            }
        }
    }
}

TEST(ParamTensorTest, ShapeAndOffsets) {
    std::vector<double> v(3 * 2 * 4);
    for (size_t k = 0; k < v.size(); ++k) {
        v[k] = static_cast<double>(k);
    }
    const ParamTensor t(6, 2, 4, v);
    EXPECT_EQ(t.size(), 24u);
    EXPECT_EQ(t.at(2, 1, 3), static_cast<double>((2 * 2 + 1) * 4 + 3));
    EXPECT_EQ(t.brick(1, 0)[0], 8.0);
    EXPECT_THROW(ParamTensor(6, 2, 4, std::vector<double>(5)), std::invalid_argument);
    EXPECT_THROW(t.with_values(std::vector<double>(3)), std::invalid_argument);
    Rng rng(4);
    const ParamTensor r = ParamTensor::random(6, 2, 4, rng);
    for (double x : r.values()) {
        EXPECT_GE(x, 0.0);
        EXPECT_LT(x, 2 * kPi);
    }
}

TEST(ApplyAnsatz, ZeroAnglesFixAllZeros) {
    const AnsatzConfig a{6, 3, BrickTemplate::ry_cnot_ry()};
    const PureState s = apply_ansatz(PureState::zero(6), a.zeros(), a.brick);
    EXPECT_NEAR(std::abs(s.amplitudes()(0)), 1.0, 1e-15);
}

TEST(ApplyAnsatz, AdjointRoundTrip) {
    Rng rng(5);
    const AnsatzConfig a{8, 3, BrickTemplate::ry_cnot_ry()};
    const PureState s = PureState::random(8, rng);
    const ParamTensor theta = a.random(rng);
    const PureState back = apply_ansatz(apply_ansatz(s, theta, a.brick), theta, a.brick, true);
    EXPECT_LT((back.amplitudes() - s.amplitudes()).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(ApplyAnsatz, MatchesDenseCircuitOracle) {
    Rng rng(6);
    const AnsatzConfig a{4, 2, BrickTemplate::ry_cnot_ry()};
    const ParamTensor theta = a.random(rng);
    const PureState s = PureState::random(4, rng);
    const oracle::Mat u = oracle::circuit(4, 2, theta.values());
    const PureState got = apply_ansatz(s, theta, a.brick);
    EXPECT_LT((got.amplitudes() - u * s.amplitudes()).cwiseAbs().maxCoeff(), 1e-12);
    const PureState adj = apply_ansatz(s, theta, a.brick, true);
    EXPECT_LT((adj.amplitudes() - u.adjoint() * s.amplitudes()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(ApplyAnsatz, RejectsShapeMismatch) {
    const AnsatzConfig a{4, 2, BrickTemplate::ry_cnot_ry()};
    EXPECT_THROW(apply_ansatz(PureState::zero(6), a.zeros(), a.brick), std::invalid_argument);
}

// Changing one brick's angles changes U(theta) U(theta')^dagger only on that
// brick's forward lightcone.
TEST(ApplyAnsatz, ParameterLocality) {
    Rng rng(7);
    const int n = 6, d = 3;
    const AnsatzConfig a{n, d, BrickTemplate::ry_cnot_ry()};
    const auto placements = layout(n, d);
    for (const auto &pl : placements) {
        ParamTensor theta = a.random(rng);
        ParamTensor moved = theta;
        for (int k = 0; k < 4; ++k) {
            moved.at(pl.block, pl.layer, k) += 0.3 + k;
        }
        const oracle::Mat diff =
            oracle::circuit(n, d, moved.values()) * oracle::circuit(n, d, theta.values()).adjoint();
        std::set<int> cone = {pl.a, pl.b};
        for (const auto &later : placements) {
            if (later.layer > pl.layer && (cone.count(later.a) || cone.count(later.b))) {
                cone.insert(later.a);
                cone.insert(later.b);
            }
        }
        for (int q = 0; q < n; ++q) {
            if (cone.count(q)) {
                continue;
            }
            for (const ComplexMatrix &p : {gates::X(), gates::Z()}) {
                const oracle::Mat pq = oracle::embed(p, {q}, n);
                EXPECT_LT((diff * pq - pq * diff).cwiseAbs().maxCoeff(), 1e-10)
                    << "brick (" << pl.layer << "," << pl.block << ") qubit " << q;
            }
        }
    }
}

}  // namespace
}  // namespace also
