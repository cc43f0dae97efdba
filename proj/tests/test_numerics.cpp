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

#include "interlace/numerics.hpp"

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"

#include "interlace/lattice.hpp"
#include "interlace/sampling.hpp"
#include "oracles.hpp"

using namespace interlace;

namespace {

Matrix random_hermitian(int n, SplitMix64 &rng) {
    const Matrix g = complex_ginibre(n, rng);
    return 0.5 * (g + g.adjoint());
}

}  // namespace

TEST(Eigendecompose, IdentityHasUnitSpectrum) {
    const HermitianEigen eig = hermitian_eigendecompose(Matrix::Identity(3, 3));
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(eig.values[k], 1.0, 1e-14);
    EXPECT_LE((eig.vectors.adjoint() * eig.vectors - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Eigendecompose, NamedLatticeSpectra) {
    const HermitianEigen jx = hermitian_eigendecompose(build_hamiltonian(LatticeSpec::jx(3)));
    EXPECT_NEAR(jx.values[0], -1.0, 1e-12);
    EXPECT_NEAR(jx.values[1], 0.0, 1e-12);
    EXPECT_NEAR(jx.values[2], 1.0, 1e-12);

    const HermitianEigen hom = hermitian_eigendecompose(build_hamiltonian(LatticeSpec::homogeneous(3)));
    EXPECT_NEAR(hom.values[0], -std::numbers::sqrt2, 1e-12);
    EXPECT_NEAR(hom.values[1], 0.0, 1e-12);
    EXPECT_NEAR(hom.values[2], std::numbers::sqrt2, 1e-12);
}

TEST(Eigendecompose, ReconstructsRandomHermitian) {
    SplitMix64 rng(11);
    for (int n : {2, 3, 5, 8}) {
        const Matrix a = random_hermitian(n, rng);
        const HermitianEigen eig = hermitian_eigendecompose(a);
        for (int k = 1; k < n; ++k) EXPECT_LE(eig.values[k - 1], eig.values[k]);
        const Matrix v = eig.vectors;
        EXPECT_LE((v.adjoint() * v - Matrix::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-12);
        const Matrix rebuilt = v * eig.values.cast<Complex>().asDiagonal() * v.adjoint();
        EXPECT_LE((rebuilt - a).norm(), 1e-10);
    }
}

TEST(Eigendecompose, RejectsNonHermitian) {
    Matrix a = Matrix::Zero(2, 2);
    a(0, 1) = 1.0;
    try {
        hermitian_eigendecompose(a);
        FAIL() << "expected NotHermitian";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::NotHermitian);
    }
    EXPECT_THROW(hermitian_eigendecompose(Matrix::Zero(2, 3)), Error);
}

TEST(ExpmIScaled, ZeroGeneratorGivesIdentity) {
    EXPECT_LE((expm_i_scaled(Matrix::Zero(4, 4), 5.0) - Matrix::Identity(4, 4)).norm(), 1e-15);
}

TEST(ExpmIScaled, JxIsTwoPiPeriodicForOddN) {
    const Matrix h = build_hamiltonian(LatticeSpec::jx(3));
    EXPECT_LE((expm_i_scaled(h, 2.0 * std::numbers::pi) - Matrix::Identity(3, 3)).norm(), 1e-10);
}

TEST(ExpmIScaled, MatchesTaylorOracle) {
    const Matrix h = build_hamiltonian(LatticeSpec::homogeneous(2));
    const double t = std::numbers::pi / 4.0;
    EXPECT_LE((expm_i_scaled(h, t) - oracle::taylor_expm_i(h, t)).norm(), 1e-13);

    SplitMix64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        const Matrix a = random_hermitian(4, rng);
        const double s = 3.0 * rng.uniform() - 1.5;
        EXPECT_LE((expm_i_scaled(a, s) - oracle::taylor_expm_i(a, s)).norm(), 1e-11);
    }
}

TEST(ExpmIScaled, GroupLawAndAdjoint) {
    SplitMix64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + trial % 5;
        const Matrix a = random_hermitian(n, rng);
        const double s = 10.0 * rng.uniform() - 5.0;
        const double t = 10.0 * rng.uniform() - 5.0;
        const Matrix us = expm_i_scaled(a, s);
        EXPECT_LE((us * expm_i_scaled(a, t) - expm_i_scaled(a, s + t)).norm(), 1e-9);
        EXPECT_LE((us.adjoint() - expm_i_scaled(a, -s)).norm(), 1e-10);
        EXPECT_TRUE(is_unitary(us, 1e-10));
    }
}

TEST(FrobeniusNorm, BasicValues) {
    EXPECT_EQ(frobenius_norm(Matrix::Zero(3, 3)), 0.0);
    for (int n = 1; n <= 6; ++n) EXPECT_NEAR(frobenius_norm(Matrix::Identity(n, n)), std::sqrt(n), 1e-15);
}

TEST(FrobeniusNorm, MatchesElementwiseOracle) {
    SplitMix64 rng(17);
    const Matrix a = complex_ginibre(4, rng);
    EXPECT_NEAR(frobenius_norm(a), oracle::elementwise_frobenius(a), 1e-14);
}

TEST(FrobeniusNorm, UnitarilyInvariant) {
    SplitMix64 rng(19);
    for (int trial = 0; trial < 10; ++trial) {
        const Matrix a = complex_ginibre(5, rng);
        const Matrix u = haar_unitary(5, rng);
        const Matrix v = haar_unitary(5, rng);
        const double base = frobenius_norm(a);
        EXPECT_NEAR(frobenius_norm(u * a * v), base, 1e-10 * base);
    }
}

TEST(IsUnitary, Examples) {
    EXPECT_TRUE(is_unitary(Matrix::Identity(3, 3), 1e-12));
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 1.0;
    d(1, 1) = 2.0;
    EXPECT_FALSE(is_unitary(d, 1e-6));
    EXPECT_FALSE(is_unitary(Matrix::Zero(2, 3), 1.0));
}
