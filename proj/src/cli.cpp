// Copyright 2026 The oscim Authors
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

#include "oscim/cli.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "CLI11.hpp"
#include "oscim/io.hpp"

namespace oscim {
namespace {

// Settings shared by solve and sweep.
struct Experiment {
    std::string graph_path;
    std::string backend = "phase";
    int runs = 100;
    double coupling = kDefaultGlobalScale;
    std::optional<double> shil;
    int bits = 10;
    uint64_t seed = 1;
    std::string out_path;
    int machine_n = 0;
    double f0 = kDefaultResonanceHz;
    double noise = 0;
    double shil_ratio = ShilConfig{}.auto_ratio;
    double shil_ramp = ShilConfig{}.ramp_periods;
    double free_run = RunSchedule{}.free_run_periods;
    double settle = RunSchedule{}.settle_periods;
    double tolerance_deg = 15.0;
    unsigned threads = 0;
};

void add_experiment_options(CLI::App *cmd, Experiment &x) {
    cmd->add_option("--graph", x.graph_path, "Graph file")->required();
    cmd->add_option("--backend", x.backend, "phase or circuit")->check(CLI::IsMember({"phase", "circuit"}));
    cmd->add_option("--runs", x.runs, "Runs per experiment")->check(CLI::Range(1, 1'000'000));
    cmd->add_option("--coupling", x.coupling, "Global coupling scale")->check(CLI::Range(0.0, 10.0));
    cmd->add_option("--shil", x.shil, "Fixed SHIL strength (default: automatic)")->check(CLI::Range(0.0, 100.0));
    cmd->add_option("--bits", x.bits, "Potentiometer resolution")->check(CLI::Range(1, 16));
    cmd->add_option("--seed", x.seed, "Master seed");
    cmd->add_option("--out", x.out_path, "Output file (default: standard output)");
    cmd->add_option("--n", x.machine_n, "Oscillator count (default: graph size, at least 2)")
        ->check(CLI::Range(0, kMaxOracleSpins));
    cmd->add_option("--f0", x.f0, "Resonance frequency in Hz")->check(CLI::PositiveNumber);
    cmd->add_option("--noise", x.noise, "Phase noise strength")->check(CLI::NonNegativeNumber);
    cmd->add_option("--shil-ratio", x.shil_ratio, "Automatic SHIL strength per unit row sum")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--shil-ramp", x.shil_ramp, "SHIL ramp length in periods")->check(CLI::NonNegativeNumber);
    cmd->add_option("--free-run", x.free_run, "Free-run periods before sync-on")->check(CLI::NonNegativeNumber);
    cmd->add_option("--settle", x.settle, "Settle periods after sync-on")->check(CLI::PositiveNumber);
    cmd->add_option("--tolerance", x.tolerance_deg, "Binarization tolerance in degrees")
        ->check(CLI::Range(0.0, 90.0));
    cmd->add_option("--threads", x.threads, "Worker threads (0: all cores)");
}

struct Setup {
    Instance inst;
    MachineConfig machine;
    BackendConfig backend;
    RunSchedule schedule;
};

Setup build(const Experiment &x) {
    Graph g = parse_graph(read_text_file(x.graph_path));
    if (g.size() > kMaxOracleSpins) {
        throw std::out_of_range("graph has " + std::to_string(g.size()) + " vertices; the oracle handles at most " +
                                std::to_string(kMaxOracleSpins));
    }
    MachineOptions mo;
    mo.n = x.machine_n > 0 ? x.machine_n : std::max(2, g.size());
    mo.global_scale = x.coupling;
    mo.quantizer.bits = x.bits;
    mo.f0 = x.f0;
    mo.noise_sigma = x.noise;
    mo.shil.auto_ratio = x.shil_ratio;
    mo.shil.ramp_periods = x.shil_ramp;
    if (x.shil) {
        mo.shil.auto_amplitude = false;
        mo.shil.amplitude = *x.shil;
    }
    Setup s{Instance(g), make_machine(g, mo), {}, {}};
    s.backend.kind = parse_backend(x.backend);
    s.backend.tolerance_rad = x.tolerance_deg * std::numbers::pi / 180.0;
    if (s.backend.kind == BackendKind::Circuit && x.f0 != kDefaultResonanceHz) {
        s.backend.osc = calibrate(s.backend.osc, x.f0);
    }
    s.schedule.free_run_periods = x.free_run;
    s.schedule.settle_periods = x.settle;
    return s;
}

void emit(const std::string &path, const std::string &text, std::ostream &out) {
    if (path.empty()) {
        out << text;
    } else {
        write_text_file(path, text);
    }
}

std::vector<double> parse_scales(const std::string &text) {
    std::vector<double> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.find_first_not_of(" \t") == std::string::npos) {
            continue;
        }
        size_t used = 0;
        double v = 0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception &) {
            throw std::invalid_argument("bad scale '" + item + "'");
        }
        if (item.find_first_not_of(" \t", used) != std::string::npos || !(v >= 0) || !std::isfinite(v)) {
            throw std::invalid_argument("bad scale '" + item + "'");
        }
        out.push_back(v);
    }
    if (out.empty()) {
        throw std::invalid_argument("scale list is empty");
    }
    return out;
}

int cmd_solve(const Experiment &x, const std::string &trace_path, std::ostream &out) {
    const Setup s = build(x);
    const RunStats stats = run_many(s.inst, s.machine, s.backend, s.schedule, x.runs, x.seed, x.threads);
    if (!trace_path.empty()) {
        // The exported trace is run 0 of the experiment.
        RunTrace trace;
        run_once(s.inst, s.machine, s.backend, s.schedule, derive_seed(x.seed, 0, 0), &trace);
        write_text_file(trace_path, trace_csv(trace));
    }
    const auto doc = result_document(s.inst, s.machine, s.backend, s.schedule, stats, x.runs, x.seed);
    emit(x.out_path, doc.dump(2) + "\n", out);
    return kExitOk;
}

int cmd_oracle(const std::string &graph_path, std::ostream &out) {
    const Graph g = parse_graph(read_text_file(graph_path));
    const OracleResult r = brute_force_max_cut(g);
    std::ostringstream line;
    line.precision(17);
    line << r.optimum;
    out << line.str() << "\n";
    for (const auto &b : r.normalized_bitstrings()) {
        out << b << "\n";
    }
    return kExitOk;
}

int cmd_sweep(const Experiment &x, const std::string &scales_text, std::ostream &out) {
    const std::vector<double> scales = parse_scales(scales_text);
    const Setup s = build(x);
    const auto rows = sweep_coupling(s.inst, s.machine, s.backend, s.schedule, scales, x.runs, x.seed, x.threads);
    emit(x.out_path, sweep_csv(rows), out);
    return kExitOk;
}

int cmd_convert(const std::string &in_path, const std::string &out_path, std::ostream &out, std::ostream &err) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(read_text_file(in_path));
    } catch (const nlohmann::json::exception &e) {
        throw std::invalid_argument(std::string("malformed document: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("type") || !doc["type"].is_string()) {
        throw std::invalid_argument("document needs a string field type (qubo or ising)");
    }
    const std::string type = doc["type"].get<std::string>();
    nlohmann::json converted;
    double offset = 0;
    if (type == "qubo") {
        const IsingProblem p = qubo_to_ising(qubo_from_json(doc));
        converted = ising_to_json(p);
        offset = p.offset;
    } else if (type == "ising") {
        const Qubo q = ising_to_qubo(ising_from_json(doc));
        converted = qubo_to_json(q);
        offset = q.offset;
    } else {
        throw std::invalid_argument("unknown document type '" + type + "'");
    }
    std::ostringstream line;
    line.precision(17);
    line << "offset " << offset << "\n";
    if (out_path.empty()) {
        out << converted.dump(2) << "\n";
        err << line.str();
    } else {
        write_text_file(out_path, converted.dump(2) + "\n");
        out << line.str();
    }
    return kExitOk;
}

} // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Oscillator Ising machine simulator for max-cut"};
    app.require_subcommand(1);

    Experiment solve;
    std::string trace_path;
    auto *solve_cmd = app.add_subcommand("solve", "Run the machine repeatedly on a graph and report statistics");
    add_experiment_options(solve_cmd, solve);
    solve_cmd->add_option("--trace", trace_path, "Write the first run's trace as CSV");

    std::string oracle_graph;
    auto *oracle_cmd = app.add_subcommand("oracle", "Print the exact max-cut value and optimal bitstrings");
    oracle_cmd->add_option("--graph", oracle_graph, "Graph file")->required();

    Experiment sweep;
    sweep.runs = 20;
    std::string scales = "0.05,0.1,0.15,0.2,0.25,0.3,0.35,0.4,0.45,0.5";
    auto *sweep_cmd = app.add_subcommand("sweep", "Success rate and lock time across coupling scales");
    add_experiment_options(sweep_cmd, sweep);
    sweep_cmd->add_option("--scales", scales, "Comma-separated coupling scales");

    std::string convert_in;
    std::string convert_out;
    auto *convert_cmd = app.add_subcommand("convert", "Convert between QUBO and Ising documents");
    convert_cmd->add_option("--in", convert_in, "Input document")->required();
    convert_cmd->add_option("--out", convert_out, "Output document (default: standard output)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*solve_cmd) {
            return cmd_solve(solve, trace_path, out);
        }
        if (*oracle_cmd) {
            return cmd_oracle(oracle_graph, out);
        }
        if (*sweep_cmd) {
            return cmd_sweep(sweep, scales, out);
        }
        return cmd_convert(convert_in, convert_out, out, err);
    } catch (const SimulationError &e) {
        err << "simulation failed: " << e.what() << "\n";
        return kExitSimulation;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::out_of_range &e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception &e) {
        err << "simulation failed: " << e.what() << "\n";
        return kExitSimulation;
    }
}

} // namespace oscim
