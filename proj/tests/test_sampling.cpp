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

#include "interlace/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "gtest/gtest.h"

using namespace interlace;

namespace {

/// Two-sample Kolmogorov-Smirnov statistic.
double ks_statistic(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
    }
    return d;
}

double smallest_eigen_angle(const Matrix &u) {
    Eigen::ComplexEigenSolver<Matrix> solver(u);
    double best = std::numbers::pi;
    for (Eigen::Index k = 0; k < u.rows(); ++k) best = std::min(best, std::arg(solver.eigenvalues()[k]));
    return best;
}

}  // namespace

TEST(SplitMix64, ReferenceStream) {
    // First outputs for seed 0, as published with the reference implementation.
    SplitMix64 rng(0);
    EXPECT_EQ(rng.next(), 0xE220A8397B1DCDAFULL);
    EXPECT_EQ(rng.next(), 0x6E789E6AA1B965F4ULL);
    EXPECT_EQ(rng.next(), 0x06C45D188009454FULL);
}

TEST(SplitMix64, UniformRanges) {
    SplitMix64 rng(1);
    for (int k = 0; k < 10000; ++k) {
        const double u = rng.uniform();
        EXPECT_GE(u, 0.0);
        EXPECT_LT(u, 1.0);
        const double a = rng.angle();
        EXPECT_GT(a, 0.0);
        EXPECT_LE(a, 2.0 * std::numbers::pi);
    }
}

TEST(HaarUnitary, SingleEntryHasUnitModulus) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Matrix u = haar_unitary(1, seed);
        EXPECT_NEAR(std::abs(u(0, 0)), 1.0, 1e-14);
    }
}

TEST(HaarUnitary, AlwaysUnitary) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const int n = 1 + static_cast<int>(seed % 8);
        const Matrix u = haar_unitary(n, seed);
        EXPECT_TRUE(is_unitary(u, 1e-10));
        EXPECT_LE((u.adjoint() * u - Matrix::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(HaarUnitary, Deterministic) {
    EXPECT_EQ(haar_unitary(5, 42), haar_unitary(5, 42));
    EXPECT_NE(haar_unitary(5, 42), haar_unitary(5, 43));
}

TEST(HaarUnitary, SecondMomentMatchesOneOverN) {
    constexpr int n = 4;
    constexpr int samples = 10000;
    SplitMix64 rng(2024);
    RealMatrix mean = RealMatrix::Zero(n, n);
    for (int s = 0; s < samples; ++s) mean += haar_unitary(n, rng).cwiseAbs2();
    mean /= samples;
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) EXPECT_NEAR(mean(r, c), 1.0 / n, 0.01);
}

TEST(HaarUnitary, LeftInvarianceSmokeTest) {
    constexpr int n = 4;
    constexpr int samples = 2000;
    const Matrix v = haar_unitary(n, 99);
    SplitMix64 rng_a(1), rng_b(2);
    std::vector<double> plain, rotated;
    for (int s = 0; s < samples; ++s) {
        plain.push_back(smallest_eigen_angle(haar_unitary(n, rng_a)));
        rotated.push_back(smallest_eigen_angle(v * haar_unitary(n, rng_b)));
    }
    // 1% two-sample critical value: 1.628 sqrt((n + m) / (n m)).
    const double critical = 1.628 * std::sqrt(2.0 / samples);
    EXPECT_LT(ks_statistic(plain, rotated), critical);
}

TEST(LogicGateTarget, OrthonormalRows) {
    const Matrix t = logic_gate_target();
    for (int r = 0; r < 3; ++r) EXPECT_NEAR(t.row(r).norm(), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(t.row(0).dot(t.row(1))), 0.0, 1e-15);
    EXPECT_LE((t.adjoint() * t - Matrix::Identity(3, 3)).norm(), 1e-15);
}

TEST(LogicGateTarget, ActsOnFirstBasisVector) {
    const Eigen::Vector3cd z = logic_gate_target() * Eigen::Vector3cd(1.0, 0.0, 0.0);
    EXPECT_NEAR(z[0].real(), 1.0 / std::numbers::sqrt2, 1e-15);
    EXPECT_NEAR(z[1].real(), 0.5, 1e-15);
    EXPECT_NEAR(z[2].real(), 0.5, 1e-15);
}
