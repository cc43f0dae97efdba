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
#include <string>
#include <string_view>
#include <vector>

#include "interlace/error.hpp"
#include "interlace/numerics.hpp"

namespace interlace {

enum class LatticeKind { Jx, Homogeneous, Custom };

inline std::string_view to_string(LatticeKind kind) {
    switch (kind) {
        case LatticeKind::Jx: return "jx";
        case LatticeKind::Homogeneous: return "homogeneous";
        case LatticeKind::Custom: return "custom";
    }
    return "custom";
}

inline LatticeKind lattice_kind_from_string(std::string_view name) {
    if (name == "jx") return LatticeKind::Jx;
    if (name == "homogeneous") return LatticeKind::Homogeneous;
    if (name == "custom") return LatticeKind::Custom;
    throw Error(ErrorCode::ParseError, "unknown lattice kind '" + std::string(name) + "'");
}

/// Nearest-neighbour coupled-waveguide lattice: couplings between sites p and
/// p+1, and onsite detunings per site.
struct LatticeSpec {
    LatticeKind kind = LatticeKind::Custom;
    std::vector<double> couplings;
    std::vector<double> onsite;

    int size() const { return static_cast<int>(onsite.size()); }

    bool all_couplings_nonzero() const {
        for (double k : couplings)
            if (k == 0.0) return false;
        return true;
    }

    /// Couplings sqrt((N-n) n)/2: the spin-(N-1)/2 J_x lattice, unit-spaced spectrum.
    static LatticeSpec jx(int n) {
        check_size(n);
        LatticeSpec spec{LatticeKind::Jx, std::vector<double>(n - 1), std::vector<double>(n, 0.0)};
        for (int k = 1; k < n; ++k) spec.couplings[k - 1] = std::sqrt(static_cast<double>((n - k) * k)) / 2.0;
        return spec;
    }

    static LatticeSpec homogeneous(int n) {
        check_size(n);
        return LatticeSpec{LatticeKind::Homogeneous, std::vector<double>(n - 1, 1.0), std::vector<double>(n, 0.0)};
    }

    static LatticeSpec custom(std::vector<double> couplings, std::vector<double> onsite) {
        LatticeSpec spec{LatticeKind::Custom, std::move(couplings), std::move(onsite)};
        spec.validate();
        return spec;
    }

    static LatticeSpec of_kind(LatticeKind kind, int n) {
        switch (kind) {
            case LatticeKind::Jx: return jx(n);
            case LatticeKind::Homogeneous: return homogeneous(n);
            case LatticeKind::Custom: break;
        }
        throw Error(ErrorCode::BadDimensions, "custom lattices need explicit couplings");
    }

    void validate() const {
        const int n = size();
        check_size(n);
        if (couplings.size() != static_cast<std::size_t>(n - 1)) {
            throw Error(ErrorCode::BadDimensions, "expected " + std::to_string(n - 1) + " couplings for N=" +
                                                      std::to_string(n) + ", got " + std::to_string(couplings.size()));
        }
        for (double v : couplings)
            if (!std::isfinite(v)) throw Error(ErrorCode::BadDimensions, "non-finite coupling");
        for (double v : onsite)
            if (!std::isfinite(v)) throw Error(ErrorCode::BadDimensions, "non-finite onsite term");
        if (kind != LatticeKind::Custom) {
            const LatticeSpec ref = of_kind(kind, n);
            bool matches = true;
            for (int k = 0; k + 1 < n; ++k) matches = matches && std::abs(ref.couplings[k] - couplings[k]) <= 1e-12;
            for (double v : onsite) matches = matches && v == 0.0;
            if (!matches) {
                throw Error(ErrorCode::BadDimensions,
                            "couplings do not match the '" + std::string(to_string(kind)) + "' profile");
            }
        }
    }

   private:
    static void check_size(int n) {
        if (n < 2) throw Error(ErrorCode::BadDimensions, "lattice needs N >= 2, got " + std::to_string(n));
    }
};

/// Real symmetric tridiagonal H with onsite terms on the diagonal.
inline Matrix build_hamiltonian(const LatticeSpec &spec) {
    spec.validate();
    const int n = spec.size();
    Matrix h = Matrix::Zero(n, n);
    for (int p = 0; p < n; ++p) h(p, p) = spec.onsite[p];
    for (int p = 0; p + 1 < n; ++p) {
        h(p, p + 1) = spec.couplings[p];
        h(p + 1, p) = spec.couplings[p];
    }
    return h;
}

inline Matrix propagator(const LatticeSpec &spec, double length) {
    return expm_i_scaled(build_hamiltonian(spec), length);
}

/// A length folded into (0, 2pi] together with the number of whole 2pi
/// periods removed: length = reduced + 2pi * periods.
struct ReducedLength {
    double length;
    std::int64_t periods;
};

inline ReducedLength reduce_length(double length) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double r = std::fmod(length, two_pi);
    if (r <= 0.0) r += two_pi;
    const auto periods = static_cast<std::int64_t>(std::llround((length - r) / two_pi));
    return {r, periods};
}

/// Sign picked up by the J_x propagator when `periods` multiples of 2pi are
/// removed from its length. The spectrum is integer for odd N and
/// half-integer for even N, so e^{2 pi i H} = (-1)^{N-1}.
inline double jx_period_sign(int n, std::int64_t periods) {
    return ((n - 1) % 2 != 0 && periods % 2 != 0) ? -1.0 : 1.0;
}

/// Length in (0, 2pi]. For odd N the propagator is unchanged; for even N it
/// changes by jx_period_sign().
inline double canonical_length(const LatticeSpec &spec, double length) {
    if (spec.kind != LatticeKind::Jx) {
        throw Error(ErrorCode::NotPeriodic,
                    "only the jx lattice has a periodic propagator, got '" + std::string(to_string(spec.kind)) + "'");
    }
    return reduce_length(length).length;
}

enum class RatioClass { Rational, Irrational, Inconclusive };

inline std::string_view to_string(RatioClass c) {
    switch (c) {
        case RatioClass::Rational: return "rational";
        case RatioClass::Irrational: return "irrational";
        case RatioClass::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

struct RatioApproximation {
    double ratio;
    std::int64_t numerator;
    std::int64_t denominator;  // 0 when no convergent within the bound matched
    RatioClass classification;
};

struct RationalityReport {
    RealVector eigenvalues;
    double reference;  // largest-magnitude eigenvalue, the denominator of every ratio
    std::vector<RatioApproximation> ratios;
    RatioClass classification;
};

namespace detail {

inline constexpr std::int64_t kMaxDenominator = 1'000'000;
inline constexpr std::int64_t kSmallDenominator = 1'000;
inline constexpr double kRatioMatchTolerance = 1e-13;

/// First continued-fraction convergent p/q of x with |x - p/q| <= tol, q <= kMaxDenominator.
inline RatioApproximation approximate_ratio(double x) {
    std::int64_t p_prev = 1, p = static_cast<std::int64_t>(std::floor(x));
    std::int64_t q_prev = 0, q = 1;
    double frac = x - std::floor(x);
    const double tol = kRatioMatchTolerance * std::max(1.0, std::abs(x));
    while (true) {
        if (std::abs(x - static_cast<double>(p) / static_cast<double>(q)) <= tol) {
            return {x, p, q, q <= kSmallDenominator ? RatioClass::Rational : RatioClass::Inconclusive};
        }
        if (frac < 1e-300) break;
        const double inv = 1.0 / frac;
        const double a_real = std::floor(inv);
        if (a_real > static_cast<double>(kMaxDenominator)) break;
        const auto a = static_cast<std::int64_t>(a_real);
        frac = inv - a_real;
        const std::int64_t q_next = a * q + q_prev;
        if (q_next > kMaxDenominator) break;
        const std::int64_t p_next = a * p + p_prev;
        p_prev = p;
        p = p_next;
        q_prev = q;
        q = q_next;
    }
    return {x, 0, 0, RatioClass::Irrational};
}

}  // namespace detail

/// Best-effort check whether the non-zero eigenvalues of H have rational
/// ratios. Diagnostics only: floating point cannot decide rationality.
inline RationalityReport eigenvalue_ratio_rationality(const LatticeSpec &spec) {
    const HermitianEigen eig = hermitian_eigendecompose(build_hamiltonian(spec));
    RationalityReport report{eig.values, 0.0, {}, RatioClass::Rational};
    const double scale = std::max(1.0, eig.values.cwiseAbs().maxCoeff());
    for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
        if (std::abs(eig.values[k]) > std::abs(report.reference)) report.reference = eig.values[k];
    }
    if (std::abs(report.reference) <= 1e-9 * scale) return report;
    bool inconclusive = false;
    for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
        if (std::abs(eig.values[k]) <= 1e-9 * scale) continue;
        const RatioApproximation approx = detail::approximate_ratio(eig.values[k] / report.reference);
        report.ratios.push_back(approx);
        if (approx.classification == RatioClass::Irrational) report.classification = RatioClass::Irrational;
        if (approx.classification == RatioClass::Inconclusive) inconclusive = true;
    }
    if (inconclusive && report.classification == RatioClass::Rational) report.classification = RatioClass::Inconclusive;
    return report;
}

}  // namespace interlace
