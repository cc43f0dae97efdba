// Copyright 2026 The Interlace Authors
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

#include "interlace/universality.hpp"

#include "gtest/gtest.h"

#include "interlace/lattice.hpp"
#include "interlace/sampling.hpp"
#include "oracles.hpp"

using namespace interlace;

namespace {

Matrix random_tridiagonal(int n, SplitMix64 &rng) {
    std::vector<double> kappa(n - 1), nu(n);
    for (auto &k : kappa) k = (rng.uniform() < 0.5 ? -1.0 : 1.0) * (0.2 + rng.uniform());
    for (auto &v : nu) v = rng.uniform() - 0.5;
    return build_hamiltonian(LatticeSpec::custom(kappa, nu));
}

}  // namespace

TEST(LieClosure, JxThreePortsIsFull) {
    const LieBasisReport r = lie_closure_dimension(build_hamiltonian(LatticeSpec::jx(3)), 6);
    EXPECT_EQ(r.generated_dimension, 9);
    EXPECT_TRUE(r.closed);
    EXPECT_TRUE(r.jordan_witness);
    EXPECT_EQ(r.dimension_by_depth.front(), 4);
}

TEST(LieClosure, HomogeneousTwoPorts) {
    const LieBasisReport r = lie_closure_dimension(build_hamiltonian(LatticeSpec::homogeneous(2)), 6);
    EXPECT_EQ(r.generated_dimension, 4);
    EXPECT_TRUE(r.closed);
}

TEST(LieClosure, DecoupledBlocksGiveDirectSum) {
    const Matrix h = build_hamiltonian(LatticeSpec::custom({1.0, 0.0, 1.0}, {0.0, 0.0, 0.0, 0.0}));
    const LieBasisReport r = lie_closure_dimension(h, 6);
    EXPECT_EQ(r.generated_dimension, 8);  // u(2) + u(2)
    EXPECT_TRUE(r.closed);
    EXPECT_FALSE(r.jordan_witness);
}

TEST(LieClosure, NonzeroCouplingsAlwaysFull) {
    SplitMix64 rng(31);
    for (int n = 2; n <= 6; ++n) {
        for (int trial = 0; trial < 3; ++trial) {
            const LieBasisReport r = lie_closure_dimension(random_tridiagonal(n, rng), 8);
            EXPECT_EQ(r.generated_dimension, n * n) << "N=" << n;
        }
    }
}

TEST(LieClosure, MonotoneAndStabilised) {
    const LieBasisReport r = lie_closure_dimension(build_hamiltonian(LatticeSpec::homogeneous(5)), 8);
    for (std::size_t k = 1; k < r.dimension_by_depth.size(); ++k)
        EXPECT_GE(r.dimension_by_depth[k], r.dimension_by_depth[k - 1]);
    ASSERT_GE(r.dimension_by_depth.size(), 2u);
    EXPECT_EQ(r.dimension_by_depth.back(), r.dimension_by_depth[r.dimension_by_depth.size() - 2]);
    EXPECT_LE(r.generated_dimension, 25);
}

TEST(LieClosure, DepthExceeded) {
    try {
        lie_closure_dimension(build_hamiltonian(LatticeSpec::jx(6)), 1);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::DepthExceeded);
    }
}

TEST(LieClosure, ConjugationInvariantRank) {
    SplitMix64 rng(32);
    const Matrix h = random_tridiagonal(3, rng);
    const Matrix v = haar_unitary(3, rng);
    std::vector<Matrix> gens = interlacing_generators(h);
    std::vector<Matrix> rotated;
    for (const auto &g : gens) rotated.push_back(v * g * v.adjoint());
    EXPECT_EQ(lie_closure(gens, 6).generated_dimension, lie_closure(rotated, 6).generated_dimension);

    const Matrix dec = build_hamiltonian(LatticeSpec::custom({0.7, 0.0}, {0.0, 0.1, 0.0}));
    std::vector<Matrix> dec_rot;
    for (const auto &g : interlacing_generators(dec)) dec_rot.push_back(v * g * v.adjoint());
    EXPECT_EQ(lie_closure(interlacing_generators(dec), 6).generated_dimension,
              lie_closure(dec_rot, 6).generated_dimension);
}

TEST(LieClosure, CostGuard) {
    EXPECT_THROW(lie_closure_dimension(build_hamiltonian(LatticeSpec::jx(9)), 6), Error);
}

TEST(JordanWitness, Examples) {
    EXPECT_TRUE(jordan_block_witness(build_hamiltonian(LatticeSpec::jx(3))));
    EXPECT_TRUE(jordan_block_witness(build_hamiltonian(LatticeSpec::homogeneous(2))));
    EXPECT_FALSE(jordan_block_witness(build_hamiltonian(LatticeSpec::custom({0.8, 0.0}, {0.0, 0.0, 0.0}))));
}

TEST(JordanWitness, AllNonzeroTridiagonal) {
    SplitMix64 rng(33);
    for (int n = 2; n <= 5; ++n)
        for (int trial = 0; trial < 3; ++trial) EXPECT_TRUE(jordan_block_witness(random_tridiagonal(n, rng)));
}

TEST(JordanWitness, PowerCheckOracle) {
    // The superdiagonal shift is index N; one missing link caps it.
    Matrix shift = Matrix::Zero(4, 4);
    for (int k = 0; k < 3; ++k) shift(k, k + 1) = 1.0;
    EXPECT_EQ(oracle::nilpotency_index(shift), 4);
    EXPECT_TRUE(is_single_jordan_block(shift));
    shift(1, 2) = 0.0;
    EXPECT_EQ(oracle::nilpotency_index(shift), 2);
    EXPECT_FALSE(is_single_jordan_block(shift));
    EXPECT_FALSE(is_single_jordan_block(Matrix::Identity(3, 3)));
}
