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
#include <numbers>
#include <string>
#include <vector>

#include "interlace/error.hpp"
#include "interlace/lattice.hpp"
#include "interlace/numerics.hpp"

namespace interlace {

/// Number of free parameters of an M-layer, N-port interlaced mesh.
inline constexpr int parameter_count(int n, int m) { return m * n + (m - 1); }

/// Phases of M diagonal layers (row = layer, applied bottom-up from layer 0)
/// and the M-1 propagation lengths between them.
struct ParameterTuple {
    RealMatrix phases;  // M x N
    RealVector lengths; // M - 1

    int ports() const { return static_cast<int>(phases.cols()); }
    int layers() const { return static_cast<int>(phases.rows()); }
    int count() const { return parameter_count(ports(), layers()); }

    static ParameterTuple zeros(int n, int m) {
        ParameterTuple p{RealMatrix::Zero(m, n), RealVector::Zero(m - 1)};
        p.validate();
        return p;
    }

    void validate() const {
        if (layers() < 1 || ports() < 1) {
            throw Error(ErrorCode::BadDimensions, "need at least one layer and one port");
        }
        if (lengths.size() != layers() - 1) {
            throw Error(ErrorCode::BadDimensions, "expected " + std::to_string(layers() - 1) + " lengths for M=" +
                                                      std::to_string(layers()) + ", got " +
                                                      std::to_string(lengths.size()));
        }
        if (!phases.allFinite() || !lengths.allFinite()) {
            throw Error(ErrorCode::BadDimensions, "non-finite parameter");
        }
    }

    /// Flat index of phase `port` in layer `layer`.
    static int phase_index(int n, int layer, int port) { return layer * (n + 1) + port; }
    /// Flat index of the length following layer `gap`.
    static int length_index(int n, int gap) { return gap * (n + 1) + n; }

    /// Flat order: phi(1)_1..phi(1)_N, l_1, phi(2)_1..., ..., phi(M)_N.
    RealVector flatten() const {
        const int n = ports();
        RealVector x(count());
        for (int layer = 0; layer < layers(); ++layer) {
            for (int j = 0; j < n; ++j) x[phase_index(n, layer, j)] = phases(layer, j);
            if (layer + 1 < layers()) x[length_index(n, layer)] = lengths[layer];
        }
        return x;
    }

    static ParameterTuple unflatten(const RealVector &x, int n, int m) {
        if (x.size() != parameter_count(n, m)) {
            throw Error(ErrorCode::BadDimensions, "flat parameter vector has wrong size");
        }
        ParameterTuple p{RealMatrix(m, n), RealVector(m - 1)};
        for (int layer = 0; layer < m; ++layer) {
            for (int j = 0; j < n; ++j) p.phases(layer, j) = x[phase_index(n, layer, j)];
            if (layer + 1 < m) p.lengths[layer] = x[length_index(n, layer)];
        }
        return p;
    }
};

struct FactorizationModel {
    LatticeSpec lattice;
    ParameterTuple params;
};

/// Evaluates U(x) = e^{iQ(M)} e^{i l_{M-1} H} ... e^{i l_1 H} e^{iQ(1)} for a
/// fixed lattice. H is diagonalised once; every propagator reuses it.
class Interlacer {
   public:
    explicit Interlacer(LatticeSpec lattice)
        : lattice_(std::move(lattice)), hamiltonian_(build_hamiltonian(lattice_)),
          eigen_(hermitian_eigendecompose(hamiltonian_)) {}

    const LatticeSpec &lattice() const { return lattice_; }
    const Matrix &hamiltonian() const { return hamiltonian_; }
    int ports() const { return lattice_.size(); }

    Matrix propagator(double length) const { return expm_i_scaled(eigen_, length); }

    Matrix evaluate(const ParameterTuple &params) const {
        check(params);
        Matrix u = phase_layer(params, 0).asDiagonal();
        for (int layer = 1; layer < params.layers(); ++layer) {
            u = phase_layer(params, layer).asDiagonal() * (propagator(params.lengths[layer - 1]) * u);
        }
        return u;
    }

    /// dU/dx_k for every parameter, in ParameterTuple::flatten() order.
    std::vector<Matrix> jacobian(const ParameterTuple &params) const {
        check(params);
        const int n = ports();
        const int m = params.layers();
        const int factors = 2 * m - 1;

        // Factor k: even k = phase layer k/2, odd k = propagator (k-1)/2.
        std::vector<ComplexVector> diagonals(m);
        for (int layer = 0; layer < m; ++layer) diagonals[layer] = phase_layer(params, layer);
        std::vector<Matrix> props(m - 1);
        for (int gap = 0; gap + 1 < m; ++gap) props[gap] = propagator(params.lengths[gap]);

        // right[k] = F_{k-1} ... F_0, left[k] = F_{last} ... F_{k+1}.
        std::vector<Matrix> right(factors), left(factors);
        right[0] = Matrix::Identity(n, n);
        for (int k = 1; k < factors; ++k) {
            const int prev = k - 1;
            right[k] = prev % 2 == 0 ? Matrix(diagonals[prev / 2].asDiagonal() * right[prev])
                                     : Matrix(props[prev / 2] * right[prev]);
        }
        left[factors - 1] = Matrix::Identity(n, n);
        for (int k = factors - 2; k >= 0; --k) {
            const int next = k + 1;
            left[k] = next % 2 == 0 ? Matrix(left[next] * diagonals[next / 2].asDiagonal())
                                    : Matrix(left[next] * props[next / 2]);
        }

        const Complex i_unit(0.0, 1.0);
        std::vector<Matrix> out(params.count());
        for (int layer = 0; layer < m; ++layer) {
            const int k = 2 * layer;
            for (int j = 0; j < n; ++j) {
                out[ParameterTuple::phase_index(n, layer, j)] =
                    (i_unit * diagonals[layer][j]) * left[k].col(j) * right[k].row(j);
            }
            if (layer + 1 < m) {
                const int kp = k + 1;
                out[ParameterTuple::length_index(n, layer)] =
                    left[kp] * (i_unit * hamiltonian_ * props[layer]) * right[kp];
            }
        }
        return out;
    }

   private:
    void check(const ParameterTuple &params) const {
        params.validate();
        if (params.ports() != ports()) {
            throw Error(ErrorCode::BadDimensions, "parameter tuple has N=" + std::to_string(params.ports()) +
                                                      " but lattice has N=" + std::to_string(ports()));
        }
    }

    static ComplexVector phase_layer(const ParameterTuple &params, int layer) {
        ComplexVector d(params.ports());
        for (int j = 0; j < params.ports(); ++j) d[j] = std::polar(1.0, params.phases(layer, j));
        return d;
    }

    LatticeSpec lattice_;
    Matrix hamiltonian_;
    HermitianEigen eigen_;
};

inline Matrix evaluate(const FactorizationModel &model) { return Interlacer(model.lattice).evaluate(model.params); }

inline std::vector<Matrix> jacobian(const FactorizationModel &model) {
    return Interlacer(model.lattice).jacobian(model.params);
}

/// Folds phases into (0, 2pi] and, for the J_x lattice, lengths too. For even
/// N a removed odd number of 2pi periods flips the propagator's sign, which is
/// absorbed by adding pi to every phase of the following layer.
inline ParameterTuple canonicalize(const ParameterTuple &params, const LatticeSpec &lattice) {
    params.validate();
    ParameterTuple out = params;
    if (lattice.kind == LatticeKind::Jx) {
        for (int gap = 0; gap < out.lengths.size(); ++gap) {
            const ReducedLength r = reduce_length(out.lengths[gap]);
            out.lengths[gap] = r.length;
            if (jx_period_sign(lattice.size(), r.periods) < 0) {
                out.phases.row(gap + 1).array() += std::numbers::pi;
            }
        }
    }
    for (Eigen::Index k = 0; k < out.phases.size(); ++k) {
        out.phases.data()[k] = reduce_length(out.phases.data()[k]).length;
    }
    return out;
}

}  // namespace interlace
