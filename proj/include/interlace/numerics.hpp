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

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <string>

#include "interlace/error.hpp"

namespace interlace {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kUnitaryTolerance = 1e-10;

/// Spectral decomposition A = V diag(values) V^dagger with ascending values.
struct HermitianEigen {
    RealVector values;
    Matrix vectors;
};

inline void require_square(const Matrix &a, const char *what) {
    if (a.rows() != a.cols() || a.rows() == 0) {
        throw Error(ErrorCode::BadDimensions, std::string(what) + " must be a non-empty square matrix, got " +
                                                  std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
    }
}

inline bool all_finite(const Matrix &a) {
    for (Eigen::Index k = 0; k < a.size(); ++k) {
        if (!std::isfinite(a.data()[k].real()) || !std::isfinite(a.data()[k].imag())) return false;
    }
    return true;
}

/// Largest per-entry deviation |A - A^dagger|.
inline double hermiticity_defect(const Matrix &a) { return (a - a.adjoint()).cwiseAbs().maxCoeff(); }

inline double frobenius_norm(const Matrix &a) { return a.norm(); }

/// True iff ||A^dagger A - I||_F <= tol.
inline bool is_unitary(const Matrix &a, double tol = kUnitaryTolerance) {
    if (a.rows() != a.cols()) return false;
    return frobenius_norm(a.adjoint() * a - Matrix::Identity(a.rows(), a.cols())) <= tol;
}

inline HermitianEigen hermitian_eigendecompose(const Matrix &a) {
    require_square(a, "Hermitian input");
    if (!all_finite(a)) throw Error(ErrorCode::BadDimensions, "matrix has non-finite entries");
    const double defect = hermiticity_defect(a);
    if (defect > kHermitianTolerance) {
        throw Error(ErrorCode::NotHermitian, "max |A - A^dagger| = " + std::to_string(defect));
    }
    // Symmetrize so the solver sees an exactly self-adjoint input.
    const Matrix sym = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorCode::NonConvergence, "self-adjoint eigensolver did not converge");
    }
    return HermitianEigen{solver.eigenvalues(), solver.eigenvectors()};
}

/// e^{i t A} from a precomputed spectral decomposition of A.
inline Matrix expm_i_scaled(const HermitianEigen &eig, double t) {
    ComplexVector phases(eig.values.size());
    for (Eigen::Index k = 0; k < eig.values.size(); ++k) phases[k] = std::polar(1.0, t * eig.values[k]);
    return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

/// e^{i t A} for Hermitian A.
inline Matrix expm_i_scaled(const Matrix &a, double t) { return expm_i_scaled(hermitian_eigendecompose(a), t); }

}  // namespace interlace
