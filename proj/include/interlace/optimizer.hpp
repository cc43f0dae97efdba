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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "interlace/error.hpp"
#include "interlace/factorization.hpp"
#include "interlace/lattice.hpp"
#include "interlace/numerics.hpp"
#include "interlace/sampling.hpp"

namespace interlace {

enum class InitStrategy { UniformPeriod };

/// Levenberg-Marquardt settings. `restarts` counts random initialisations in
/// total, so restarts = 1 is a single run.
struct FitConfig {
    double tolerance = 1e-10;
    int max_iterations = 2000;
    double initial_damping = 1e-3;
    double damping_up = 10.0;
    double damping_down = 0.1;
    double max_damping = 1e16;
    int restarts = 5;
    InitStrategy init = InitStrategy::UniformPeriod;
    bool strict_target = true;

    void validate() const {
        const bool ok = tolerance > 0.0 && max_iterations >= 1 && initial_damping > 0.0 && damping_up > 1.0 &&
                        damping_down > 0.0 && damping_down < 1.0 && max_damping > initial_damping && restarts >= 1;
        if (!ok) throw Error(ErrorCode::BadTarget, "invalid fit configuration");
    }
};

struct FitReport {
    LatticeSpec lattice;
    ParameterTuple best_params;
    double final_loss = std::numeric_limits<double>::infinity();
    int iterations_used = 0;   // iterations of the winning restart
    int total_iterations = 0;  // summed over every restart that ran
    int restarts_used = 0;
    int best_restart = 0;
    bool converged = false;
    std::vector<double> trace;  // loss after every iteration of the winning restart
    std::vector<std::string> warnings;
};

/// ||U - T||_F^2 / N^2.
inline double error_norm(const Matrix &u, const Matrix &target) {
    if (u.rows() != target.rows() || u.cols() != target.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "matrices differ in shape");
    }
    const double n = static_cast<double>(u.rows());
    return (u - target).squaredNorm() / (n * n);
}

/// Real and imaginary parts of (U - T), row-major, interleaved per entry.
inline RealVector residuals_of(const Matrix &u, const Matrix &target) {
    if (u.rows() != target.rows() || u.cols() != target.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "matrices differ in shape");
    }
    const Eigen::Index n = u.rows();
    RealVector r(2 * n * n);
    for (Eigen::Index row = 0; row < n; ++row) {
        for (Eigen::Index col = 0; col < n; ++col) {
            const Complex d = u(row, col) - target(row, col);
            r[2 * (row * n + col)] = d.real();
            r[2 * (row * n + col) + 1] = d.imag();
        }
    }
    return r;
}

inline RealVector residual_vector(const FactorizationModel &model, const Matrix &target) {
    return residuals_of(evaluate(model), target);
}

/// Columns are d(residual)/dx_k in the residual ordering above.
inline RealMatrix residual_jacobian(const Interlacer &mesh, const ParameterTuple &params) {
    const std::vector<Matrix> parts = mesh.jacobian(params);
    const Eigen::Index n = mesh.ports();
    RealMatrix j(2 * n * n, static_cast<Eigen::Index>(parts.size()));
    for (std::size_t k = 0; k < parts.size(); ++k) {
        for (Eigen::Index row = 0; row < n; ++row) {
            for (Eigen::Index col = 0; col < n; ++col) {
                j(2 * (row * n + col), k) = parts[k](row, col).real();
                j(2 * (row * n + col) + 1, k) = parts[k](row, col).imag();
            }
        }
    }
    return j;
}

inline ParameterTuple random_parameters(int n, int m, SplitMix64 &rng) {
    ParameterTuple p{RealMatrix(m, n), RealVector(m - 1)};
    for (int layer = 0; layer < m; ++layer) {
        for (int j = 0; j < n; ++j) p.phases(layer, j) = rng.angle();
        if (layer + 1 < m) p.lengths[layer] = rng.angle();
    }
    return p;
}

/// One damped least-squares run from a given starting point:
/// (J^T J + lambda I) step = -J^T r, accept iff the loss drops.
inline FitReport lm_run(const Interlacer &mesh, const Matrix &target, ParameterTuple start, const FitConfig &config) {
    const int n = mesh.ports();
    const double scale = 1.0 / (static_cast<double>(n) * n);
    FitReport report;
    report.lattice = mesh.lattice();
    report.best_params = std::move(start);

    ParameterTuple &params = report.best_params;
    RealVector x = params.flatten();
    RealVector r = residuals_of(mesh.evaluate(params), target);
    double loss = r.squaredNorm() * scale;
    report.trace.push_back(loss);

    double damping = config.initial_damping;
    RealMatrix jac = residual_jacobian(mesh, params);
    RealMatrix normal = jac.transpose() * jac;
    RealVector gradient = jac.transpose() * r;

    int iter = 0;
    while (loss > config.tolerance && iter < config.max_iterations) {
        ++iter;
        RealMatrix system = normal;
        system.diagonal().array() += damping;
        Eigen::LLT<RealMatrix> llt(system);
        bool accepted = false;
        if (llt.info() == Eigen::Success) {
            const RealVector x_new = x + llt.solve(-gradient);
            const ParameterTuple candidate = ParameterTuple::unflatten(x_new, n, params.layers());
            const RealVector r_new = residuals_of(mesh.evaluate(candidate), target);
            const double loss_new = r_new.squaredNorm() * scale;
            if (std::isfinite(loss_new) && loss_new < loss) {
                x = x_new;
                params = candidate;
                r = r_new;
                loss = loss_new;
                accepted = true;
            }
        }
        if (accepted) {
            damping = std::max(damping * config.damping_down, 1e-300);
            jac = residual_jacobian(mesh, params);
            normal.noalias() = jac.transpose() * jac;
            gradient.noalias() = jac.transpose() * r;
        } else {
            damping *= config.damping_up;
        }
        report.trace.push_back(loss);
        if (damping > config.max_damping) break;
    }
    report.final_loss = loss;
    report.iterations_used = iter;
    report.total_iterations = iter;
    report.restarts_used = 1;
    report.converged = loss <= config.tolerance;
    return report;
}

/// Fits an M-layer mesh on `lattice` to `target`, restarting from fresh
/// uniform initialisations until one converges or the restarts run out.
/// Keeps the lowest loss; ties go to the earliest restart.
inline FitReport lm_fit(const Matrix &target, const LatticeSpec &lattice, int layers, const FitConfig &config,
                        std::uint64_t seed) {
    config.validate();
    lattice.validate();
    if (layers < 1) throw Error(ErrorCode::BadDimensions, "need at least one layer");
    if (target.rows() != target.cols() || target.rows() != lattice.size()) {
        throw Error(ErrorCode::DimensionMismatch, "target is " + std::to_string(target.rows()) + "x" +
                                                      std::to_string(target.cols()) + " but lattice has N=" +
                                                      std::to_string(lattice.size()));
    }
    std::vector<std::string> warnings;
    if (!all_finite(target) || !is_unitary(target, 1e-8)) {
        if (config.strict_target) throw Error(ErrorCode::BadTarget, "target is not unitary within 1e-8");
        warnings.emplace_back("target is not unitary within 1e-8; fitting anyway");
    }

    const Interlacer mesh(lattice);
    SplitMix64 rng(derive_seed(seed, 0x1417));
    FitReport best;
    int total = 0;
    int attempts = 0;
    for (int restart = 0; restart < config.restarts; ++restart) {
        FitReport run = lm_run(mesh, target, random_parameters(lattice.size(), layers, rng), config);
        total += run.iterations_used;
        ++attempts;
        const bool better = restart == 0 || run.final_loss < best.final_loss;
        if (better) {
            best = std::move(run);
            best.best_restart = restart;
        }
        if (best.converged) break;
    }
    best.total_iterations = total;
    best.restarts_used = attempts;
    best.warnings = std::move(warnings);
    return best;
}

struct TrialRecord {
    int trial = 0;
    std::uint64_t seed = 0;
    int iterations = 0;
    bool converged = false;
    double final_loss = std::numeric_limits<double>::quiet_NaN();
    std::string error;  // non-empty when the trial threw

    double log10_loss() const { return std::log10(std::max(final_loss, std::numeric_limits<double>::min())); }
};

struct SweepResult {
    LatticeKind kind = LatticeKind::Jx;
    int ports = 0;
    int layers = 0;
    std::vector<TrialRecord> trials;
    double median_log10 = std::numeric_limits<double>::quiet_NaN();
    double q1_log10 = std::numeric_limits<double>::quiet_NaN();
    double q3_log10 = std::numeric_limits<double>::quiet_NaN();

    std::vector<double> final_losses() const {
        std::vector<double> out;
        out.reserve(trials.size());
        for (const auto &t : trials) out.push_back(t.final_loss);
        return out;
    }

    double convergence_rate() const {
        if (trials.empty()) return 0.0;
        int ok = 0;
        for (const auto &t : trials) ok += t.converged ? 1 : 0;
        return static_cast<double>(ok) / static_cast<double>(trials.size());
    }
};

/// Linear-interpolation quantile of sorted data, q in [0, 1].
inline double quantile_sorted(const std::vector<double> &sorted, double q) {
    if (sorted.empty()) return std::numeric_limits<double>::quiet_NaN();
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

/// Layer offsets relative to N; {-1, 0, 1} gives M = N-1, N, N+1.
struct SweepPlan {
    std::vector<int> ports{4, 6, 8};
    std::vector<int> layer_offsets{-1, 0, 1};
    std::vector<LatticeKind> kinds{LatticeKind::Jx, LatticeKind::Homogeneous};
    int trials = 100;
    FitConfig fit;
    std::uint64_t seed = 0;
    int jobs = 1;

    void validate() const {
        for (int n : ports)
            if (n < 2) throw Error(ErrorCode::BadDimensions, "sweep needs every N >= 2");
        for (int n : ports)
            for (int d : layer_offsets)
                if (n + d < 1) throw Error(ErrorCode::BadDimensions, "layer offset gives M < 1");
        if (trials < 0) throw Error(ErrorCode::BadDimensions, "trial count must be non-negative");
        fit.validate();
    }
};

/// Trial t of every configuration uses seed + t: the Haar target is drawn from
/// that seed and the fit initialisations from a stream derived from it, so the
/// same targets are reused across M and lattice kinds.
inline std::uint64_t trial_seed(std::uint64_t master, int trial) { return master + static_cast<std::uint64_t>(trial); }

inline TrialRecord run_trial(LatticeKind kind, int n, int m, int trial, const SweepPlan &plan) {
    TrialRecord rec;
    rec.trial = trial;
    rec.seed = trial_seed(plan.seed, trial);
    try {
        const Matrix target = haar_unitary(n, rec.seed);
        const FitReport fit = lm_fit(target, LatticeSpec::of_kind(kind, n), m, plan.fit, rec.seed);
        rec.iterations = fit.total_iterations;
        rec.converged = fit.converged;
        rec.final_loss = fit.final_loss;
    } catch (const std::exception &e) {
        rec.error = e.what();
    }
    return rec;
}

inline void summarize(SweepResult &result) {
    std::vector<double> logs;
    for (const auto &t : result.trials)
        if (t.error.empty()) logs.push_back(t.log10_loss());
    std::sort(logs.begin(), logs.end());
    result.q1_log10 = quantile_sorted(logs, 0.25);
    result.median_log10 = quantile_sorted(logs, 0.5);
    result.q3_log10 = quantile_sorted(logs, 0.75);
}

/// Runs plan.trials fits per (kind, N, M); results ordered kind-major, then N,
/// then M, with trials in index order regardless of plan.jobs.
inline std::vector<SweepResult> layer_sweep(const SweepPlan &plan) {
    plan.validate();
    std::vector<SweepResult> results;
    for (LatticeKind kind : plan.kinds) {
        for (int n : plan.ports) {
            for (int d : plan.layer_offsets) {
                SweepResult r;
                r.kind = kind;
                r.ports = n;
                r.layers = n + d;
                r.trials.resize(static_cast<std::size_t>(plan.trials));
                results.push_back(std::move(r));
            }
        }
    }

    const std::size_t per = static_cast<std::size_t>(plan.trials);
    const std::size_t tasks = results.size() * per;
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t t = next++; t < tasks; t = next++) {
            SweepResult &r = results[t / per];
            const int trial = static_cast<int>(t % per);
            r.trials[trial] = run_trial(r.kind, r.ports, r.layers, trial, plan);
        }
    };
    const int jobs = std::max(1, plan.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int k = 0; k < jobs; ++k) pool.emplace_back(worker);
    }
    for (auto &r : results) summarize(r);
    return results;
}

}  // namespace interlace
