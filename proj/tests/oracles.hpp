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

// Reference computations used only by the tests. None of them go through the
// spectral exponential or the prefix/suffix Jacobian of the library.

#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace interlace::oracle {

using Matrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

/// e^{itA} from `terms` Taylor terms, after halving tA until its norm is below 1/2.
inline Matrix taylor_expm_i(const Matrix &a, double t, int terms = 50) {
    Matrix x = Complex(0.0, t) * a;
    int squarings = 0;
    while (x.norm() > 0.5) {
        x /= 2.0;
        ++squarings;
    }
    const Eigen::Index n = a.rows();
    Matrix sum = Matrix::Identity(n, n);
    Matrix term = Matrix::Identity(n, n);
    for (int k = 1; k < terms; ++k) {
        term = term * x / static_cast<double>(k);
        sum += term;
    }
    for (int s = 0; s < squarings; ++s) sum = sum * sum;
    return sum;
}

/// sqrt(sum |a_ij|^2) entry by entry.
inline double elementwise_frobenius(const Matrix &a) {
    double s = 0.0;
    for (Eigen::Index r = 0; r < a.rows(); ++r)
        for (Eigen::Index c = 0; c < a.cols(); ++c) s += std::norm(a(r, c));
    return std::sqrt(s);
}

/// Builds every factor explicitly (diagonal phases, Taylor propagators) and
/// multiplies them left to right in the written order.
inline Matrix naive_chain(const Matrix &h, const Eigen::MatrixXd &phases, const Eigen::VectorXd &lengths) {
    const Eigen::Index m = phases.rows();
    const Eigen::Index n = phases.cols();
    std::vector<Matrix> factors;  // leftmost first
    for (Eigen::Index layer = m - 1; layer >= 0; --layer) {
        Matrix d = Matrix::Zero(n, n);
        for (Eigen::Index j = 0; j < n; ++j) d(j, j) = std::exp(Complex(0.0, phases(layer, j)));
        factors.push_back(d);
        if (layer > 0) factors.push_back(taylor_expm_i(h, lengths[layer - 1]));
    }
    Matrix u = Matrix::Identity(n, n);
    for (const auto &f : factors) u = u * f;
    return u;
}

/// Central difference of f at x along coordinate k.
template <class F>
Matrix central_difference(F &&f, Eigen::VectorXd x, int k, double step) {
    Eigen::VectorXd plus = x, minus = x;
    plus[k] += step;
    minus[k] -= step;
    return (f(plus) - f(minus)) / (2.0 * step);
}

/// Smallest k with A^k = 0 (within tol relative to ||A||^k), or 0 if none up to n.
inline int nilpotency_index(const Matrix &a, double tol = 1e-8) {
    const double norm = a.norm();
    if (norm == 0.0) return 1;
    const Matrix unit = a / norm;
    Matrix p = unit;
    for (int k = 1; k <= a.rows(); ++k) {
        if (p.norm() <= tol) return k;
        p = p * unit;
    }
    return 0;
}

}  // namespace interlace::oracle
