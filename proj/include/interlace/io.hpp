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

#include <charconv>
#include <cstdio>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "interlace/error.hpp"
#include "interlace/factorization.hpp"
#include "interlace/lattice.hpp"
#include "interlace/logic_gate.hpp"
#include "interlace/numerics.hpp"
#include "interlace/optimizer.hpp"
#include "interlace/universality.hpp"

namespace interlace::io {

using nlohmann::json;

/// Shortest-safe round-trip text for a double: 17 significant digits, '.'
/// decimal regardless of locale.
inline std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

namespace detail {

[[noreturn]] inline void fail(const std::string &field, const std::string &why) {
    throw Error(ErrorCode::ParseError, "field '" + field + "': " + why);
}

inline const json &require(const json &obj, const char *field) {
    if (!obj.is_object()) fail(field, "expected a JSON object");
    auto it = obj.find(field);
    if (it == obj.end()) fail(field, "missing");
    return *it;
}

inline int require_int(const json &obj, const char *field) {
    const json &v = require(obj, field);
    if (!v.is_number_integer()) fail(field, "expected an integer");
    return v.get<int>();
}

inline std::vector<double> number_array(const json &v, const std::string &field) {
    if (!v.is_array()) fail(field, "expected an array");
    std::vector<double> out;
    for (const auto &x : v) {
        if (!x.is_number()) fail(field, "expected numbers");
        const double d = x.get<double>();
        if (!std::isfinite(d)) fail(field, "non-finite value");
        out.push_back(d);
    }
    return out;
}

inline RealMatrix number_grid(const json &v, const std::string &field, int rows, int cols) {
    if (!v.is_array() || static_cast<int>(v.size()) != rows) fail(field, "expected " + std::to_string(rows) + " rows");
    RealMatrix out(rows, cols);
    for (int r = 0; r < rows; ++r) {
        const auto row = number_array(v[r], field);
        if (static_cast<int>(row.size()) != cols) fail(field, "row " + std::to_string(r) + " has wrong length");
        for (int c = 0; c < cols; ++c) out(r, c) = row[c];
    }
    return out;
}

inline json grid_to_json(const RealMatrix &m) {
    json out = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        out.push_back(std::move(row));
    }
    return out;
}

inline json vector_to_json(const RealVector &v) {
    json out = json::array();
    for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(v[k]);
    return out;
}

}  // namespace detail

// Matrix: {"n": N, "re": [[...]], "im": [[...]]}

inline json matrix_to_json(const Matrix &m) {
    return {{"n", m.rows()}, {"re", detail::grid_to_json(m.real())}, {"im", detail::grid_to_json(m.imag())}};
}

inline Matrix matrix_from_json(const json &j) {
    const int n = detail::require_int(j, "n");
    if (n < 1) detail::fail("n", "must be >= 1");
    const RealMatrix re = detail::number_grid(detail::require(j, "re"), "re", n, n);
    const RealMatrix im = detail::number_grid(detail::require(j, "im"), "im", n, n);
    Matrix m(n, n);
    m.real() = re;
    m.imag() = im;
    return m;
}

// Lattice: {"kind": "jx"|"homogeneous"|"custom", "n": N, "kappa": [...], "nu": [...]}

inline json lattice_to_json(const LatticeSpec &spec) {
    json j{{"kind", std::string(to_string(spec.kind))}, {"n", spec.size()}};
    j["kappa"] = spec.couplings;
    j["nu"] = spec.onsite;
    return j;
}

inline LatticeSpec lattice_from_json(const json &j) {
    const json &kind_field = detail::require(j, "kind");
    if (!kind_field.is_string()) detail::fail("kind", "expected a string");
    const LatticeKind kind = lattice_kind_from_string(kind_field.get<std::string>());
    const int n = detail::require_int(j, "n");
    if (kind != LatticeKind::Custom) return LatticeSpec::of_kind(kind, n);
    auto kappa = detail::number_array(detail::require(j, "kappa"), "kappa");
    auto nu = detail::number_array(detail::require(j, "nu"), "nu");
    if (static_cast<int>(nu.size()) != n) detail::fail("nu", "expected " + std::to_string(n) + " entries");
    if (static_cast<int>(kappa.size()) != n - 1) detail::fail("kappa", "expected " + std::to_string(n - 1) + " entries");
    return LatticeSpec::custom(std::move(kappa), std::move(nu));
}

// Parameters: {"n": N, "m": M, "phases": [[...] x M], "lengths": [...]}

inline json params_to_json(const ParameterTuple &p) {
    return {{"n", p.ports()},
            {"m", p.layers()},
            {"phases", detail::grid_to_json(p.phases)},
            {"lengths", detail::vector_to_json(p.lengths)}};
}

inline ParameterTuple params_from_json(const json &j) {
    const int n = detail::require_int(j, "n");
    const int m = detail::require_int(j, "m");
    if (n < 1) detail::fail("n", "must be >= 1");
    if (m < 1) detail::fail("m", "must be >= 1");
    ParameterTuple p;
    p.phases = detail::number_grid(detail::require(j, "phases"), "phases", m, n);
    const auto lengths = detail::number_array(detail::require(j, "lengths"), "lengths");
    if (static_cast<int>(lengths.size()) != m - 1) detail::fail("lengths", "expected " + std::to_string(m - 1) + " entries");
    p.lengths = Eigen::Map<const RealVector>(lengths.data(), static_cast<Eigen::Index>(lengths.size()));
    return p;
}

inline json fit_report_to_json(const FitReport &r) {
    json j{{"lattice", lattice_to_json(r.lattice)},
           {"converged", r.converged},
           {"final_L", r.final_loss},
           {"iterations_used", r.iterations_used},
           {"total_iterations", r.total_iterations},
           {"restarts_used", r.restarts_used},
           {"best_restart", r.best_restart},
           {"params", params_to_json(r.best_params)},
           {"trace", r.trace},
           {"warnings", r.warnings}};
    const ParameterTuple canon = canonicalize(r.best_params, r.lattice);
    j["canonical_params"] = params_to_json(canon);
    json physical = json::array();
    for (Eigen::Index k = 0; k < canon.lengths.size(); ++k) physical.push_back(gate::kMicronsPerRadian * canon.lengths[k]);
    j["physical_lengths_um"] = physical;
    j["microns_per_radian"] = gate::kMicronsPerRadian;
    return j;
}

inline json lie_report_to_json(const LieBasisReport &r) {
    return {{"n", r.ports},
            {"generated_dimension", r.generated_dimension},
            {"full_dimension", r.ports * r.ports},
            {"closed", r.closed},
            {"jordan_witness", r.jordan_witness},
            {"bracket_depth_used", r.bracket_depth_used},
            {"dimension_by_depth", r.dimension_by_depth}};
}

inline json truth_table_to_json(const gate::TruthTable &t) {
    json rows = json::array();
    for (const auto &r : t.rows) {
        rows.push_back({{"label", r.label},
                        {"a", r.a},
                        {"b", r.b},
                        {"chi1", r.setting.chi1},
                        {"chi2", r.setting.chi2},
                        {"e_in", r.e_in},
                        {"y_power", {r.inputs[0], r.inputs[1], r.inputs[2]}},
                        {"z_power", {r.outputs[0], r.outputs[1], r.outputs[2]}},
                        {"bits", {r.bits[0], r.bits[1], r.bits[2]}},
                        {"expected", {r.expected[0], r.expected[1], r.expected[2]}},
                        {"checked", {r.checked[0], r.checked[1], r.checked[2]}},
                        {"matches", r.matches()}});
    }
    json gates = json::array();
    for (auto g : t.gates) gates.push_back(std::string(gate::to_string(g)));
    return {{"mode", std::string(gate::to_string(t.mode))},
            {"thresholds", t.bank.levels},
            {"gates", gates},
            {"rows", rows},
            {"mismatched_rows", t.mismatched_rows()}};
}

/// Aligned plain-text rendering of a truth table.
inline std::string truth_table_text(const gate::TruthTable &t) {
    std::ostringstream out;
    char line[256];
    std::snprintf(line, sizeof(line), "%-12s %-3s %8s %8s %8s | %8s %8s %8s | %s\n", "setting", "ab", "|y1|^2",
                  "|y2|^2", "|y3|^2", "|z1|^2", "|z2|^2", "|z3|^2", "bits");
    out << "mode " << gate::to_string(t.mode) << ", gates " << gate::to_string(t.gates[0]) << "/"
        << gate::to_string(t.gates[1]) << "/" << gate::to_string(t.gates[2]) << "\n"
        << line;
    for (const auto &r : t.rows) {
        std::snprintf(line, sizeof(line), "%-12s %d%d  %8.5f %8.5f %8.5f | %8.5f %8.5f %8.5f | %d%d%d%s\n",
                      r.label.c_str(), r.a, r.b, r.inputs[0], r.inputs[1], r.inputs[2], r.outputs[0], r.outputs[1],
                      r.outputs[2], r.bits[0], r.bits[1], r.bits[2], r.matches() ? "" : "  MISMATCH");
        out << line;
    }
    return out.str();
}

inline constexpr const char *kSweepCsvHeader = "lattice,N,M,trial,seed,iterations,converged,log10_L";

inline void write_sweep_csv(std::ostream &out, const std::vector<SweepResult> &results) {
    out << kSweepCsvHeader << "\n";
    for (const auto &r : results) {
        for (const auto &t : r.trials) {
            out << to_string(r.kind) << ',' << r.ports << ',' << r.layers << ',' << t.trial << ',' << t.seed << ','
                << t.iterations << ',' << (t.converged ? "true" : "false") << ','
                << (t.error.empty() ? format_double(t.log10_loss()) : std::string("nan")) << "\n";
        }
    }
}

inline json sweep_summary_to_json(const std::vector<SweepResult> &results) {
    json out = json::array();
    for (const auto &r : results) {
        int failed = 0;
        for (const auto &t : r.trials) failed += t.error.empty() ? 0 : 1;
        out.push_back({{"lattice", std::string(to_string(r.kind))},
                       {"N", r.ports},
                       {"M", r.layers},
                       {"trials", r.trials.size()},
                       {"failed_trials", failed},
                       {"convergence_rate", r.convergence_rate()},
                       {"median_log10_L", r.median_log10},
                       {"q1_log10_L", r.q1_log10},
                       {"q3_log10_L", r.q3_log10}});
    }
    return out;
}

inline json fit_config_to_json(const FitConfig &c) {
    return {{"tolerance", c.tolerance},        {"max_iterations", c.max_iterations},
            {"initial_damping", c.initial_damping}, {"damping_up", c.damping_up},
            {"damping_down", c.damping_down},  {"max_damping", c.max_damping},
            {"restarts", c.restarts},          {"init", "uniform_period"},
            {"strict_target", c.strict_target}};
}

/// Overwrites fields of `c` present in `j`; unknown keys are rejected.
inline void apply_fit_config(const json &j, FitConfig &c) {
    if (!j.is_object()) detail::fail("fit", "expected a JSON object");
    for (const auto &[key, value] : j.items()) {
        if (key == "tolerance") c.tolerance = value.get<double>();
        else if (key == "max_iterations") c.max_iterations = value.get<int>();
        else if (key == "initial_damping") c.initial_damping = value.get<double>();
        else if (key == "damping_up") c.damping_up = value.get<double>();
        else if (key == "damping_down") c.damping_down = value.get<double>();
        else if (key == "max_damping") c.max_damping = value.get<double>();
        else if (key == "restarts") c.restarts = value.get<int>();
        else if (key == "strict_target") c.strict_target = value.get<bool>();
        else if (key == "init") {
            if (value != "uniform_period") detail::fail("init", "only 'uniform_period' is supported");
        } else detail::fail(key, "unknown fit option");
    }
}

inline json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception &e) {
        throw Error(ErrorCode::ParseError, "'" + path + "' is not valid JSON: " + e.what());
    }
}

}  // namespace interlace::io
