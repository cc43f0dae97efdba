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

#include <Eigen/SVD>

#include <string>
#include <vector>

#include "interlace/error.hpp"
#include "interlace/numerics.hpp"
#include "interlace/sampling.hpp"

namespace interlace {

inline constexpr double kRankTolerance = 1e-9;
inline constexpr int kMaxProbePorts = 8;

struct LieBasisReport {
    int ports = 0;
    int generated_dimension = 0;
    bool closed = false;
    bool jordan_witness = false;
    int bracket_depth_used = 0;
    std::vector<int> dimension_by_depth;  // entry d: span dimension after d bracket rounds
};

inline Matrix commutator(const Matrix &a, const Matrix &b) { return a * b - b * a; }

namespace detail {

/// Orthonormal basis (real inner product Re tr(A^dagger B)) of the real span
/// of `elements`, keeping singular values above kRankTolerance * sigma_max.
inline std::vector<Matrix> real_span_basis(const std::vector<Matrix> &elements, int n) {
    const Eigen::Index len = 2 * static_cast<Eigen::Index>(n) * n;
    RealMatrix stacked(len, static_cast<Eigen::Index>(elements.size()));
    for (std::size_t k = 0; k < elements.size(); ++k) {
        const Eigen::Map<const RealVector> flat(reinterpret_cast<const double *>(elements[k].data()), len);
        stacked.col(static_cast<Eigen::Index>(k)) = flat;
    }
    Eigen::JacobiSVD<RealMatrix> svd(stacked, Eigen::ComputeThinU);
    const RealVector &sv = svd.singularValues();
    std::vector<Matrix> basis;
    if (sv.size() == 0 || sv[0] <= 0.0) return basis;
    for (Eigen::Index k = 0; k < sv.size() && sv[k] > kRankTolerance * sv[0]; ++k) {
        Matrix m(n, n);
        Eigen::Map<RealVector>(reinterpret_cast<double *>(m.data()), len) = svd.matrixU().col(k);
        basis.push_back(std::move(m));
    }
    return basis;
}

}  // namespace detail

/// Dimension of the real Lie algebra generated by `generators`, adjoining all
/// pairwise brackets of the current basis once per round until the dimension
/// repeats. Throws DepthExceeded if it is still growing after max_depth rounds.
inline LieBasisReport lie_closure(const std::vector<Matrix> &generators, int max_depth) {
    if (generators.empty()) throw Error(ErrorCode::BadDimensions, "no generators");
    const int n = static_cast<int>(generators.front().rows());
    for (const auto &g : generators) {
        if (g.rows() != n || g.cols() != n) throw Error(ErrorCode::BadDimensions, "generators differ in shape");
    }
    if (n > kMaxProbePorts) throw Error(ErrorCode::BadDimensions, "closure probe is limited to N <= 8");

    LieBasisReport report;
    report.ports = n;
    std::vector<Matrix> basis = detail::real_span_basis(generators, n);
    report.dimension_by_depth.push_back(static_cast<int>(basis.size()));
    for (int depth = 1; depth <= max_depth; ++depth) {
        std::vector<Matrix> candidates = basis;
        for (std::size_t a = 0; a < basis.size(); ++a)
            for (std::size_t b = a + 1; b < basis.size(); ++b) candidates.push_back(commutator(basis[a], basis[b]));
        std::vector<Matrix> next = detail::real_span_basis(candidates, n);
        report.dimension_by_depth.push_back(static_cast<int>(next.size()));
        report.bracket_depth_used = depth;
        const bool stable = next.size() == basis.size();
        basis = std::move(next);
        if (stable) {
            report.closed = true;
            break;
        }
    }
    report.generated_dimension = static_cast<int>(basis.size());
    if (!report.closed) {
        throw Error(ErrorCode::DepthExceeded, "dimension still growing (" + std::to_string(basis.size()) +
                                                  ") after " + std::to_string(max_depth) + " bracket rounds");
    }
    return report;
}

/// Phase-layer generators i e_j e_j^dagger, j = 1..N, together with iH.
inline std::vector<Matrix> interlacing_generators(const Matrix &h) {
    const Eigen::Index n = h.rows();
    const Complex i_unit(0.0, 1.0);
    std::vector<Matrix> gens;
    for (Eigen::Index j = 0; j < n; ++j) {
        Matrix e = Matrix::Zero(n, n);
        e(j, j) = i_unit;
        gens.push_back(std::move(e));
    }
    gens.push_back(i_unit * h);
    return gens;
}

/// True iff M is nilpotent of index exactly N, i.e. similar to one N x N Jordan block.
inline bool is_single_jordan_block(const Matrix &m) {
    const Eigen::Index n = m.rows();
    const double norm = m.norm();
    if (norm == 0.0) return false;
    const Matrix unit = m / norm;
    Matrix power = Matrix::Identity(n, n);
    for (Eigen::Index k = 1; k < n; ++k) power = power * unit;
    const double below = power.norm();  // ||M^{N-1}|| / ||M||^{N-1}
    const double at = (power * unit).norm();
    return at <= 1e-8 && below > 1e-8;
}

/// Searches the complex span of [E_jj, H] and [E_kk, [E_jj, H]] for a strictly
/// upper-triangular element with nilpotency index N.
inline bool jordan_block_witness(const Matrix &h) {
    require_square(h, "Hamiltonian");
    if (hermiticity_defect(h) > kHermitianTolerance) throw Error(ErrorCode::NotHermitian, "H is not Hermitian");
    const Eigen::Index n = h.rows();
    if (n == 1) return true;

    std::vector<Matrix> diag(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        diag[j] = Matrix::Zero(n, n);
        diag[j](j, j) = 1.0;
    }
    std::vector<Matrix> first, elements;
    for (Eigen::Index j = 0; j < n; ++j) first.push_back(commutator(diag[j], h));
    elements = first;
    for (const auto &f : first)
        for (Eigen::Index k = 0; k < n; ++k) elements.push_back(commutator(diag[k], f));

    Matrix stacked(n * n, static_cast<Eigen::Index>(elements.size()));
    for (std::size_t k = 0; k < elements.size(); ++k)
        stacked.col(static_cast<Eigen::Index>(k)) = elements[k].reshaped();
    Eigen::JacobiSVD<Matrix> span_svd(stacked, Eigen::ComputeThinU);
    const RealVector &sv = span_svd.singularValues();
    if (sv.size() == 0 || sv[0] <= 0.0) return false;
    Eigen::Index rank = 0;
    while (rank < sv.size() && sv[rank] > kRankTolerance * sv[0]) ++rank;
    const Matrix basis = span_svd.matrixU().leftCols(rank);

    // Rows of the basis that sit on or below the diagonal (column-major reshape).
    std::vector<Eigen::Index> lower;
    for (Eigen::Index col = 0; col < n; ++col)
        for (Eigen::Index row = col; row < n; ++row) lower.push_back(col * n + row);
    Matrix constraint(static_cast<Eigen::Index>(lower.size()), rank);
    for (std::size_t r = 0; r < lower.size(); ++r) constraint.row(static_cast<Eigen::Index>(r)) = basis.row(lower[r]);

    Eigen::JacobiSVD<Matrix> null_svd(constraint, Eigen::ComputeFullV);
    const RealVector &csv = null_svd.singularValues();
    Eigen::Index constrained = 0;
    while (constrained < csv.size() && csv[constrained] > kRankTolerance) ++constrained;
    const Eigen::Index free_dims = rank - constrained;
    if (free_dims == 0) return false;
    const Matrix upper = basis * null_svd.matrixV().rightCols(free_dims);

    // A generic element of the strictly upper subspace has the largest nilpotency
    // index the subspace allows; a few seeded draws guard against unlucky ones.
    SplitMix64 rng(0x5eedULL);
    for (int attempt = 0; attempt < 4; ++attempt) {
        ComplexVector coeff(free_dims);
        for (Eigen::Index k = 0; k < free_dims; ++k) {
            const auto [a, b] = rng.gaussian_pair();
            coeff[k] = Complex(a, b);
        }
        Matrix candidate = (upper * coeff).reshaped(n, n);
        candidate = candidate.triangularView<Eigen::StrictlyUpper>();
        if (is_single_jordan_block(candidate)) return true;
    }
    return false;
}

/// Real dimension of the Lie algebra generated by the phase layers and iH,
/// plus the Jordan-block witness for H.
inline LieBasisReport lie_closure_dimension(const Matrix &h, int max_depth) {
    require_square(h, "Hamiltonian");
    if (hermiticity_defect(h) > kHermitianTolerance) throw Error(ErrorCode::NotHermitian, "H is not Hermitian");
    LieBasisReport report = lie_closure(interlacing_generators(h), max_depth);
    report.jordan_witness = jordan_block_witness(h);
    return report;
}

}  // namespace interlace
