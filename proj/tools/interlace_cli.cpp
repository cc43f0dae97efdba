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

// interlace: command-line front end.
//
//   interlace fit       --logic-gate | --target U.json  [--kind jx --m 3] [--out report.json]
//   interlace sweep     [--config sweep.json] [--ports 4,6 --trials 10] --csv out.csv --summary out.json
//   interlace probe-lie --lattice spec.json | --kind jx --n 4  [--max-depth 6]
//   interlace gate      --mode control_on --thresholds 0.075,0.075,0.8 --unit exact|fitted
//   interlace haar      --n 4 --count 3 --seed 7 --out-dir dir
//
// Exit codes: 0 completed (non-convergence is reported, not an error),
// 1 runtime failure, 2 invalid input or arguments.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "interlace/interlace.hpp"

namespace {

using namespace interlace;
using io::json;

constexpr const char *kVersion = "0.1.0";

std::uint64_t default_seed() {
    if (const char *env = std::getenv("INTERLACE_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception &) {
            throw Error(ErrorCode::ParseError, "INTERLACE_SEED is not an unsigned integer");
        }
    }
    return 0;
}

json provenance(const std::string &command, const json &config, std::uint64_t seed) {
    return {{"tool", "interlace"}, {"version", kVersion}, {"command", command}, {"seed", seed}, {"config", config}};
}

void write_text(const std::string &path, const std::string &text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

std::vector<double> parse_csv_doubles(const std::string &text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception &) {
            throw Error(ErrorCode::ParseError, "'" + item + "' is not a number");
        }
    }
    return out;
}

LatticeSpec resolve_lattice(const std::string &lattice_file, const std::string &kind, int n) {
    if (!lattice_file.empty()) return io::lattice_from_json(io::read_json_file(lattice_file));
    return LatticeSpec::of_kind(lattice_kind_from_string(kind), n);
}

// ---------------------------------------------------------------- fit

struct FitArgs {
    std::string target_file;
    bool logic_gate = false;
    std::string lattice_file;
    std::string kind = "jx";
    int layers = 0;
    std::string config_file;
    std::optional<double> tolerance;
    std::optional<int> max_iterations;
    std::optional<int> restarts;
    std::optional<double> damping;
    bool lenient = false;
    std::optional<std::uint64_t> seed;
    std::string out;
};

int run_fit(const FitArgs &a) {
    if (a.target_file.empty() == !a.logic_gate) {
        throw Error(ErrorCode::ParseError, "give exactly one of --target or --logic-gate");
    }
    const Matrix target = a.logic_gate ? logic_gate_target() : io::matrix_from_json(io::read_json_file(a.target_file));
    const int n = static_cast<int>(target.rows());
    const LatticeSpec lattice = resolve_lattice(a.lattice_file, a.kind, n);
    const int layers = a.layers > 0 ? a.layers : n;

    FitConfig config;
    if (!a.config_file.empty()) io::apply_fit_config(io::read_json_file(a.config_file), config);
    if (a.tolerance) config.tolerance = *a.tolerance;
    if (a.max_iterations) config.max_iterations = *a.max_iterations;
    if (a.restarts) config.restarts = *a.restarts;
    if (a.damping) config.initial_damping = *a.damping;
    if (a.lenient) config.strict_target = false;
    config.validate();
    const std::uint64_t seed = a.seed ? *a.seed : default_seed();

    const FitReport report = lm_fit(target, lattice, layers, config, seed);
    json out = io::fit_report_to_json(report);
    json resolved{{"target", a.logic_gate ? std::string("logic_gate") : a.target_file},
                  {"lattice", io::lattice_to_json(lattice)},
                  {"m", layers},
                  {"fit", io::fit_config_to_json(config)}};
    out["provenance"] = provenance("fit", resolved, seed);
    write_text(a.out, out.dump(2) + "\n");
    std::cerr << "fit: N=" << n << " M=" << layers << " L=" << io::format_double(report.final_loss)
              << (report.converged ? " converged" : " not converged") << "\n";
    return 0;
}

// ---------------------------------------------------------------- sweep

struct SweepArgs {
    std::string config_file;
    std::string ports;
    std::string kinds;
    std::optional<int> trials;
    std::optional<std::uint64_t> seed;
    std::optional<int> jobs;
    std::optional<int> max_iterations;
    std::optional<int> restarts;
    std::string csv = "sweep.csv";
    std::string summary = "sweep_summary.json";
};

std::vector<int> parse_int_list(const std::string &text) {
    std::vector<int> out;
    for (double v : parse_csv_doubles(text)) out.push_back(static_cast<int>(v));
    return out;
}

std::vector<LatticeKind> parse_kind_list(const std::string &text) {
    std::vector<LatticeKind> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(lattice_kind_from_string(item));
    return out;
}

int run_sweep(const SweepArgs &a) {
    SweepPlan plan;
    plan.seed = default_seed();
    std::string csv_path = a.csv, summary_path = a.summary;
    if (!a.config_file.empty()) {
        const json cfg = io::read_json_file(a.config_file);
        for (const auto &[key, value] : cfg.items()) {
            if (key == "ports") plan.ports = value.get<std::vector<int>>();
            else if (key == "layer_offsets") plan.layer_offsets = value.get<std::vector<int>>();
            else if (key == "kinds") {
                plan.kinds.clear();
                for (const auto &k : value) plan.kinds.push_back(lattice_kind_from_string(k.get<std::string>()));
            } else if (key == "trials") plan.trials = value.get<int>();
            else if (key == "seed") plan.seed = value.get<std::uint64_t>();
            else if (key == "jobs") plan.jobs = value.get<int>();
            else if (key == "fit") io::apply_fit_config(value, plan.fit);
            else if (key == "csv") csv_path = value.get<std::string>();
            else if (key == "summary") summary_path = value.get<std::string>();
            else throw Error(ErrorCode::ParseError, "field '" + key + "': unknown sweep option");
        }
    }
    if (!a.ports.empty()) plan.ports = parse_int_list(a.ports);
    if (!a.kinds.empty()) plan.kinds = parse_kind_list(a.kinds);
    if (a.trials) plan.trials = *a.trials;
    if (a.seed) plan.seed = *a.seed;
    if (a.jobs) plan.jobs = *a.jobs;
    if (a.max_iterations) plan.fit.max_iterations = *a.max_iterations;
    if (a.restarts) plan.fit.restarts = *a.restarts;
    plan.validate();

    const auto results = layer_sweep(plan);

    std::ostringstream csv;
    io::write_sweep_csv(csv, results);
    write_text(csv_path, csv.str());

    json kinds = json::array();
    for (auto k : plan.kinds) kinds.push_back(std::string(to_string(k)));
    json resolved{{"ports", plan.ports}, {"layer_offsets", plan.layer_offsets}, {"kinds", kinds},
                  {"trials", plan.trials}, {"fit", io::fit_config_to_json(plan.fit)}, {"csv", csv_path}};
    json summary{{"provenance", provenance("sweep", resolved, plan.seed)},
                 {"results", io::sweep_summary_to_json(results)}};
    write_text(summary_path, summary.dump(2) + "\n");

    for (const auto &r : results) {
        std::cerr << to_string(r.kind) << " N=" << r.ports << " M=" << r.layers
                  << " median log10 L=" << r.median_log10 << " converged " << r.convergence_rate() * 100 << "%\n";
    }
    return 0;
}

// ---------------------------------------------------------------- probe-lie

int run_probe(const std::string &lattice_file, const std::string &kind, int n, int max_depth, const std::string &out) {
    const LatticeSpec lattice = resolve_lattice(lattice_file, kind, n);
    const LieBasisReport report = lie_closure_dimension(build_hamiltonian(lattice), max_depth);
    json j = io::lie_report_to_json(report);
    j["lattice"] = io::lattice_to_json(lattice);
    j["all_couplings_nonzero"] = lattice.all_couplings_nonzero();
    const RationalityReport ratios = eigenvalue_ratio_rationality(lattice);
    j["eigenvalues"] = std::vector<double>(ratios.eigenvalues.begin(), ratios.eigenvalues.end());
    j["eigenvalue_ratios"] = std::string(to_string(ratios.classification));
    j["provenance"] = provenance("probe-lie", {{"lattice", io::lattice_to_json(lattice)}, {"max_depth", max_depth}}, 0);
    write_text(out, j.dump(2) + "\n");
    return 0;
}

// ---------------------------------------------------------------- gate

struct GateArgs {
    std::string mode = "control_off";
    std::string thresholds = "0.075,0.075,0.8";
    std::string unit = "exact";
    std::optional<std::uint64_t> seed;
    std::string json_out;
    std::string format = "text";
};

int run_gate(const GateArgs &a) {
    const gate::ControlMode mode = gate::control_mode_from_string(a.mode);
    const std::vector<double> levels = parse_csv_doubles(a.thresholds);
    if (levels.size() != 3) throw Error(ErrorCode::ParseError, "--thresholds needs three values");
    gate::ThresholdBank bank{{levels[0], levels[1], levels[2]}};
    bank.validate();

    const std::uint64_t seed = a.seed ? *a.seed : default_seed();
    Matrix unit = logic_gate_target();
    json fit_json;
    if (a.unit == "fitted") {
        const FitReport fit = lm_fit(logic_gate_target(), LatticeSpec::jx(3), 3, FitConfig{}, seed);
        if (!fit.converged) throw Error(ErrorCode::NotConverged, "logic-gate fit did not converge");
        unit = Interlacer(fit.lattice).evaluate(fit.best_params);
        fit_json = io::fit_report_to_json(fit);
        fit_json.erase("trace");
    } else if (a.unit != "exact") {
        throw Error(ErrorCode::ParseError, "--unit must be 'exact' or 'fitted'");
    }

    const gate::TruthTable table = gate::evaluate_truth_table(mode, bank, unit);
    json j = io::truth_table_to_json(table);
    j["unit"] = a.unit;
    if (!fit_json.is_null()) j["fit"] = fit_json;
    j["provenance"] = provenance("gate", {{"mode", a.mode}, {"thresholds", levels}, {"unit", a.unit}}, seed);

    if (a.format == "json") {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << io::truth_table_text(table);
    }
    if (!a.json_out.empty()) write_text(a.json_out, j.dump(2) + "\n");
    if (!table.mismatched_rows().empty()) {
        gate::truth_table(mode, bank, unit);  // throws TruthTableMismatch with the row list
    }
    return 0;
}

// ---------------------------------------------------------------- haar

int run_haar(int n, int count, std::optional<std::uint64_t> seed_opt, const std::string &out_dir) {
    if (n < 1) throw Error(ErrorCode::BadDimensions, "--n must be >= 1");
    if (count < 0) throw Error(ErrorCode::BadDimensions, "--count must be >= 0");
    const std::uint64_t seed = seed_opt ? *seed_opt : default_seed();
    if (count > 0) std::filesystem::create_directories(out_dir);
    for (int k = 0; k < count; ++k) {
        // Matrix k uses seed + k.
        const std::uint64_t s = seed + static_cast<std::uint64_t>(k);
        json j = io::matrix_to_json(haar_unitary(n, s));
        j["provenance"] = provenance("haar", {{"n", n}, {"count", count}, {"index", k}, {"matrix_seed", s}}, seed);
        const std::string path =
            (std::filesystem::path(out_dir) / ("haar_n" + std::to_string(n) + "_s" + std::to_string(s) + ".json"))
                .string();
        write_text(path, j.dump(2) + "\n");
        std::cout << path << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Interlaced phase/lattice factorisation of unitary matrices"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    FitArgs fit;
    auto *fit_cmd = app.add_subcommand("fit", "Fit an interlaced mesh to a target unitary");
    fit_cmd->add_option("--target", fit.target_file, "Target matrix JSON");
    fit_cmd->add_flag("--logic-gate", fit.logic_gate, "Use the 3-port logic-gate target");
    fit_cmd->add_option("--lattice", fit.lattice_file, "LatticeSpec JSON (overrides --kind)");
    fit_cmd->add_option("--kind", fit.kind, "jx | homogeneous");
    fit_cmd->add_option("--m", fit.layers, "Number of phase layers (default N)");
    fit_cmd->add_option("--config", fit.config_file, "Fit settings JSON; flags override it");
    fit_cmd->add_option("--tolerance", fit.tolerance, "Loss acceptance threshold");
    fit_cmd->add_option("--max-iterations", fit.max_iterations, "Iterations per restart");
    fit_cmd->add_option("--restarts", fit.restarts, "Random initialisations in total");
    fit_cmd->add_option("--damping", fit.damping, "Initial damping");
    fit_cmd->add_flag("--lenient", fit.lenient, "Warn instead of failing on a non-unitary target");
    fit_cmd->add_option("--seed", fit.seed, "Master seed (default $INTERLACE_SEED or 0)");
    fit_cmd->add_option("--out", fit.out, "Report path (default stdout)");

    SweepArgs sweep;
    auto *sweep_cmd = app.add_subcommand("sweep", "Layer-count sweep over Haar targets");
    sweep_cmd->add_option("--config", sweep.config_file, "Sweep JSON; flags override it");
    sweep_cmd->add_option("--ports", sweep.ports, "Comma-separated N values");
    sweep_cmd->add_option("--kinds", sweep.kinds, "Comma-separated lattice kinds");
    sweep_cmd->add_option("--trials", sweep.trials, "Targets per configuration");
    sweep_cmd->add_option("--seed", sweep.seed, "Master seed");
    sweep_cmd->add_option("--jobs", sweep.jobs, "Worker threads");
    sweep_cmd->add_option("--max-iterations", sweep.max_iterations, "Iterations per restart");
    sweep_cmd->add_option("--restarts", sweep.restarts, "Random initialisations per fit");
    sweep_cmd->add_option("--csv", sweep.csv, "Per-trial CSV path");
    sweep_cmd->add_option("--summary", sweep.summary, "Summary JSON path");

    std::string probe_lattice, probe_kind = "jx", probe_out;
    int probe_n = 3, probe_depth = 6;
    auto *probe_cmd = app.add_subcommand("probe-lie", "Lie-closure dimension and Jordan-block witness");
    probe_cmd->add_option("--lattice", probe_lattice, "LatticeSpec JSON");
    probe_cmd->add_option("--kind", probe_kind, "jx | homogeneous (without --lattice)");
    probe_cmd->add_option("--n", probe_n, "Port count (without --lattice)");
    probe_cmd->add_option("--max-depth", probe_depth, "Bracket rounds before giving up");
    probe_cmd->add_option("--out", probe_out, "Report path (default stdout)");

    GateArgs gate_args;
    auto *gate_cmd = app.add_subcommand("gate", "Logic-gate truth table");
    gate_cmd->add_option("--mode", gate_args.mode, "control_off | control_on");
    gate_cmd->add_option("--thresholds", gate_args.thresholds, "Th1,Th2,Th3");
    gate_cmd->add_option("--unit", gate_args.unit, "exact | fitted");
    gate_cmd->add_option("--seed", gate_args.seed, "Seed for the fitted unit");
    gate_cmd->add_option("--json", gate_args.json_out, "Also write the table as JSON here");
    gate_cmd->add_option("--format", gate_args.format, "text | json on stdout");

    int haar_n = 4, haar_count = 1;
    std::optional<std::uint64_t> haar_seed;
    std::string haar_dir = ".";
    auto *haar_cmd = app.add_subcommand("haar", "Write Haar-random unitaries");
    haar_cmd->add_option("--n", haar_n, "Matrix size");
    haar_cmd->add_option("--count", haar_count, "Number of matrices");
    haar_cmd->add_option("--seed", haar_seed, "Seed of the first matrix");
    haar_cmd->add_option("--out-dir", haar_dir, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*fit_cmd) return run_fit(fit);
        if (*sweep_cmd) return run_sweep(sweep);
        if (*probe_cmd) return run_probe(probe_lattice, probe_kind, probe_n, probe_depth, probe_out);
        if (*gate_cmd) return run_gate(gate_args);
        if (*haar_cmd) return run_haar(haar_n, haar_count, haar_seed, haar_dir);
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        const bool input_error = e.code() == ErrorCode::ParseError || e.code() == ErrorCode::BadDimensions ||
                                 e.code() == ErrorCode::BadTarget || e.code() == ErrorCode::DimensionMismatch ||
                                 e.code() == ErrorCode::NotHermitian;
        return input_error ? 2 : 1;
    } catch (const json::exception &e) {
        std::cerr << "error: malformed JSON value: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
