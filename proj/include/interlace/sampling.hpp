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

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

#include "interlace/numerics.hpp"

namespace interlace {

/// SplitMix64 (Steele, Lea & Flood 2014): state advances by the golden-ratio
/// increment 0x9E3779B97F4A7C15 and each output is the state passed through
/// the mixer with multipliers 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB
/// (shifts 30, 27, 31). Fully specified, so other implementations can
/// reproduce a stream exactly.
class SplitMix64 {
   public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t operator()() { return next(); }
    static constexpr std::uint64_t min() { return 0; }
    static constexpr std::uint64_t max() { return ~std::uint64_t{0}; }

    /// Top 53 bits as a double in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 2pi].
    double angle() { return 2.0 * std::numbers::pi * (1.0 - uniform()); }

    /// Two independent standard normals via Box-Muller (u1 drawn on (0, 1]).
    std::pair<double, double> gaussian_pair() {
        const double u1 = 1.0 - uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * std::numbers::pi * u2;
        return {r * std::cos(t), r * std::sin(t)};
    }

   private:
    std::uint64_t state_;
};

/// Independent sub-stream seed: one SplitMix64 output of seed ^ stream-tag.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    return SplitMix64(seed ^ (stream * 0xD1B54A32D192ED03ULL)).next();
}

/// Complex standard Gaussian matrix, E|z|^2 = 1, filled row-major with the
/// real and imaginary parts of each entry taken from one Box-Muller pair.
inline Matrix complex_ginibre(int n, SplitMix64 &rng) {
    Matrix z(n, n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            const auto [a, b] = rng.gaussian_pair();
            z(r, c) = Complex(a, b) / std::numbers::sqrt2;
        }
    }
    return z;
}

/// Haar-distributed unitary: QR of a Ginibre matrix with Q's columns rotated
/// by the phases of R's diagonal, which removes the QR phase ambiguity.
inline Matrix haar_unitary(int n, SplitMix64 &rng) {
    if (n < 1) throw Error(ErrorCode::BadDimensions, "Haar sample needs N >= 1");
    const Matrix z = complex_ginibre(n, rng);
    Eigen::HouseholderQR<Matrix> qr(z);
    Matrix q = qr.householderQ() * Matrix::Identity(n, n);
    const Matrix &packed = qr.matrixQR();
    for (int k = 0; k < n; ++k) {
        const Complex rkk = packed(k, k);
        const double mag = std::abs(rkk);
        q.col(k) *= mag > 0.0 ? rkk / mag : Complex(1.0, 0.0);
    }
    return q;
}

inline Matrix haar_unitary(int n, std::uint64_t seed) {
    SplitMix64 rng(seed);
    return haar_unitary(n, rng);
}

/// Rows (1,-1,0)/sqrt2, (1,1,-sqrt2)/2, (1,1,sqrt2)/2.
inline Matrix logic_gate_target() {
    const double s = 1.0 / std::numbers::sqrt2;
    Matrix t(3, 3);
    t << s, -s, 0.0,  //
        0.5, 0.5, -s,  //
        0.5, 0.5, s;
    return t;
}

}  // namespace interlace
