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

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "interlace/error.hpp"
#include "interlace/factorization.hpp"
#include "interlace/numerics.hpp"
#include "interlace/optimizer.hpp"

namespace interlace::gate {

using PortVector = Eigen::Vector3cd;
using PortPowers = Eigen::Vector3d;
using Bits = std::array<bool, 3>;

/// chi~0 = 2 arctan(sqrt2), the setting with sin^2(chi/2) = 2/3.
inline const double kChiTilde = 2.0 * std::atan(std::numbers::sqrt2);

/// Physical coupling length per radian of dimensionless lattice length (um/rad).
inline constexpr double kMicronsPerRadian = 280.0 / std::numbers::pi;

struct GateSetting {
    double chi1 = 0.0;
    double chi2 = 0.0;
    double theta1 = 0.0;
    double theta2 = 0.0;
    bool auto_compensate = true;

    /// Compensators that cancel the controller's extra phases.
    static GateSetting compensated(double chi1, double chi2) {
        return {chi1, chi2, std::numbers::pi - 0.5 * (chi1 + chi2), 0.5 * (std::numbers::pi - chi1), true};
    }

    double effective_theta1() const { return auto_compensate ? std::numbers::pi - 0.5 * (chi1 + chi2) : theta1; }
    double effective_theta2() const { return auto_compensate ? 0.5 * (std::numbers::pi - chi1) : theta2; }
};

struct ThresholdBank {
    std::array<double, 3> levels{0.075, 0.075, 0.8};

    void validate() const {
        for (double t : levels)
            if (!(t >= 0.0 && t <= 1.0)) throw Error(ErrorCode::BadDimensions, "thresholds must lie in [0, 1]");
    }
};

/// cos(kl) I - i sin(kl) sigma_x.
inline Matrix directional_coupler(double kappa_length) {
    const Complex c(std::cos(kappa_length), 0.0);
    const Complex s(0.0, -std::sin(kappa_length));
    Matrix u(2, 2);
    u << c, s, s, c;
    return u;
}

/// Controller outputs for a source E_in entering the third channel. Port 0
/// carries cos(chi1/2) cos(chi2/2), port 1 cos(chi1/2) sin(chi2/2) and port 2
/// (the control port) sin(chi1/2).
inline PortVector input_controller(const GateSetting &s, Complex e_in) {
    const double th1 = s.effective_theta1();
    const double th2 = s.effective_theta2();
    const Complex logic_phase = std::polar(1.0, th1 + 0.5 * (s.chi1 + s.chi2) - std::numbers::pi);
    const Complex control_phase = std::polar(1.0, th2 + 0.5 * s.chi1 - 0.5 * std::numbers::pi);
    PortVector y;
    y[0] = logic_phase * std::cos(0.5 * s.chi1) * std::cos(0.5 * s.chi2) * e_in;
    y[1] = logic_phase * std::cos(0.5 * s.chi1) * std::sin(0.5 * s.chi2) * e_in;
    y[2] = control_phase * std::sin(0.5 * s.chi1) * e_in;
    return y;
}

namespace detail {

inline Matrix embed_pair(const Matrix &block, int upper) {
    Matrix u = Matrix::Identity(3, 3);
    u.block(upper, upper, 2, 2) = block;
    return u;
}

inline Matrix single_phase(int channel, double phase) {
    Matrix u = Matrix::Identity(3, 3);
    u(channel, channel) = std::polar(1.0, phase);
    return u;
}

}  // namespace detail

/// Transfer matrix of the controller built from its components: an MZI on
/// channels (1, 2) with chi1 on channel 1, an MZI on channels (0, 1) with chi2
/// on channel 0, then theta1 on both logic channels and theta2 on the control.
inline Matrix controller_transfer(const GateSetting &s) {
    using detail::embed_pair;
    using detail::single_phase;
    const Matrix splitter = directional_coupler(std::numbers::pi / 4.0);
    const Matrix mzi_low = embed_pair(splitter, 1) * single_phase(1, s.chi1) * embed_pair(splitter, 1);
    const Matrix mzi_high = embed_pair(splitter, 0) * single_phase(0, s.chi2) * embed_pair(splitter, 0);
    Matrix compensate = Matrix::Identity(3, 3);
    compensate(0, 0) = std::polar(1.0, s.effective_theta1());
    compensate(1, 1) = compensate(0, 0);
    compensate(2, 2) = std::polar(1.0, s.effective_theta2());
    return compensate * mzi_high * mzi_low;
}

inline PortVector input_controller_structural(const GateSetting &s, Complex e_in) {
    const Eigen::Vector3cd source(0.0, 0.0, e_in);
    return controller_transfer(s) * source;
}

inline PortPowers powers(const PortVector &v) { return v.cwiseAbs2(); }

/// z = unit * y for a 3x3 unitary unit.
inline PortVector gate_transfer(const PortVector &y, const Matrix &unit) {
    if (unit.rows() != 3 || unit.cols() != 3) throw Error(ErrorCode::NotUnitary, "gate unit must be 3x3");
    if (!is_unitary(unit, kUnitaryTolerance)) throw Error(ErrorCode::NotUnitary, "gate unit is not unitary");
    return unit * y;
}

/// bit_j = |z_j|^2 >= Th_j.
inline Bits threshold_readout(const PortVector &z, const ThresholdBank &bank) {
    const PortPowers p = powers(z);
    return {p[0] >= bank.levels[0], p[1] >= bank.levels[1], p[2] >= bank.levels[2]};
}

enum class ControlMode { Off, On };

inline std::string_view to_string(ControlMode mode) { return mode == ControlMode::Off ? "control_off" : "control_on"; }

inline ControlMode control_mode_from_string(std::string_view name) {
    if (name == "control_off" || name == "off") return ControlMode::Off;
    if (name == "control_on" || name == "on") return ControlMode::On;
    throw Error(ErrorCode::ParseError, "unknown gate mode '" + std::string(name) + "'");
}

/// Ignored marks a port whose readout is not part of the mode's logic.
enum class Logic { Xor, Or, Nand, And, Ignored };

inline std::string_view to_string(Logic g) {
    switch (g) {
        case Logic::Xor: return "XOR";
        case Logic::Or: return "OR";
        case Logic::Nand: return "NAND";
        case Logic::And: return "AND";
        case Logic::Ignored: return "-";
    }
    return "?";
}

inline bool apply(Logic g, bool a, bool b) {
    switch (g) {
        case Logic::Xor: return a != b;
        case Logic::Or: return a || b;
        case Logic::Nand: return !(a && b);
        case Logic::And: return a && b;
        case Logic::Ignored: return false;
    }
    return false;
}

/// Gate realised at each output port. With the control port dark z3 carries at
/// most 1/4 of the power, below any usable AND threshold, so only z1 and z2
/// are read.
inline std::array<Logic, 3> expected_gates(ControlMode mode) {
    return mode == ControlMode::Off ? std::array{Logic::Xor, Logic::Or, Logic::Ignored}
                                    : std::array{Logic::Xor, Logic::Nand, Logic::And};
}

struct TruthRow {
    std::string label;
    bool a = false;
    bool b = false;
    GateSetting setting;
    double e_in = 1.0;
    PortPowers inputs = PortPowers::Zero();
    PortPowers outputs = PortPowers::Zero();
    Bits bits{};
    Bits expected{};
    std::array<bool, 3> checked{true, true, true};

    bool matches() const {
        for (int j = 0; j < 3; ++j)
            if (checked[j] && bits[j] != expected[j]) return false;
        return true;
    }
};

struct TruthTable {
    ControlMode mode = ControlMode::Off;
    ThresholdBank bank;
    std::array<Logic, 3> gates{};
    std::vector<TruthRow> rows;

    std::vector<std::string> mismatched_rows() const {
        std::vector<std::string> out;
        for (const auto &r : rows)
            if (!r.matches()) out.push_back(r.label);
        return out;
    }
};

/// (label, a, b, chi1, chi2, E_in) for the four logical inputs of a mode.
struct RowSetting {
    const char *label;
    bool a, b;
    double chi1, chi2, e_in;
};

inline std::vector<RowSetting> row_settings(ControlMode mode) {
    constexpr double pi = std::numbers::pi;
    if (mode == ControlMode::Off) {
        return {{"no input", false, false, 0.0, 0.0, 0.0},
                {"(0,0)", true, false, 0.0, 0.0, 1.0},
                {"(0,pi)", false, true, 0.0, pi, 1.0},
                {"(0,pi/2)", true, true, 0.0, pi / 2, 1.0}};
    }
    return {{"(pi,any)", false, false, pi, 0.0, 1.0},
            {"(chi0,0)", true, false, kChiTilde, 0.0, 1.0},
            {"(chi0,pi)", false, true, kChiTilde, pi, 1.0},
            {"(pi/2,pi/2)", true, true, pi / 2, pi / 2, 1.0}};
}

/// Evaluates every row without judging it; see truth_table() for the checked form.
inline TruthTable evaluate_truth_table(ControlMode mode, const ThresholdBank &bank, const Matrix &unit) {
    bank.validate();
    TruthTable table{mode, bank, expected_gates(mode), {}};
    for (const RowSetting &rs : row_settings(mode)) {
        TruthRow row;
        row.label = rs.label;
        row.a = rs.a;
        row.b = rs.b;
        row.setting = GateSetting::compensated(rs.chi1, rs.chi2);
        row.e_in = rs.e_in;
        const PortVector y = input_controller(row.setting, rs.e_in);
        const PortVector z = gate_transfer(y, unit);
        row.inputs = powers(y);
        row.outputs = powers(z);
        row.bits = threshold_readout(z, bank);
        for (int j = 0; j < 3; ++j) {
            row.checked[j] = table.gates[j] != Logic::Ignored;
            row.expected[j] = apply(table.gates[j], rs.a, rs.b);
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

/// Throws TruthTableMismatch naming every row whose readout disagrees with the
/// mode's gates.
inline TruthTable truth_table(ControlMode mode, const ThresholdBank &bank, const Matrix &unit) {
    TruthTable table = evaluate_truth_table(mode, bank, unit);
    const auto bad = table.mismatched_rows();
    if (!bad.empty()) {
        std::string msg = std::string(to_string(mode)) + " rows disagree with expected gates:";
        for (const auto &label : bad) msg += " " + label;
        throw Error(ErrorCode::TruthTableMismatch, msg);
    }
    return table;
}

/// Gate outputs through the fitted mesh instead of the exact target. For a
/// fit with loss L the output powers stay within power_error_bound(L).
inline PortVector end_to_end_with_fitted_unit(const FitReport &fit, const GateSetting &setting, Complex e_in = 1.0) {
    if (!fit.converged) throw Error(ErrorCode::NotConverged, "fit did not reach its tolerance");
    if (fit.lattice.size() != 3) throw Error(ErrorCode::BadDimensions, "logic gate needs a 3-port fit");
    const Matrix unit = Interlacer(fit.lattice).evaluate(fit.best_params);
    return gate_transfer(input_controller(setting, e_in), unit);
}

/// ||U - T||_F = 3 sqrt(L); |(|a|^2 - |b|^2)| <= (|a| + |b|) |a - b| <= 2 ||U - T||_F
/// for unit inputs, so 6 sqrt(L) bounds the power error and 10 sqrt(L) leaves margin.
inline double power_error_bound(double final_loss) { return 10.0 * std::sqrt(final_loss); }

}  // namespace interlace::gate
