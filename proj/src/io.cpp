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

#include "oscim/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace oscim {
namespace {

using nlohmann::json;

[[noreturn]] void fail_line(int line, const std::string &what) {
    throw std::invalid_argument("line " + std::to_string(line) + ": " + what);
}

std::string trim(const std::string &s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return "";
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

json matrix_to_json(const Eigen::MatrixXd &m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back(m(i, j));
        }
        rows.push_back(row);
    }
    return rows;
}

json int_matrix_to_json(const Eigen::MatrixXi &m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back(m(i, j));
        }
        rows.push_back(row);
    }
    return rows;
}

Eigen::MatrixXd matrix_from_json(const json &doc, int n, const char *name) {
    if (!doc.is_array() || static_cast<int>(doc.size()) != n) {
        throw std::invalid_argument(std::string(name) + " must be an array of " + std::to_string(n) + " rows");
    }
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i) {
        const json &row = doc[static_cast<size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != n) {
            throw std::invalid_argument(std::string(name) + " row " + std::to_string(i + 1) + " must have " +
                                        std::to_string(n) + " numbers");
        }
        for (int j = 0; j < n; ++j) {
            if (!row[static_cast<size_t>(j)].is_number()) {
                throw std::invalid_argument(std::string(name) + " entries must be numbers");
            }
            m(i, j) = row[static_cast<size_t>(j)].get<double>();
        }
    }
    return m;
}

int size_field(const json &doc) {
    if (!doc.is_object() || !doc.contains("n") || !doc["n"].is_number_integer() || doc["n"].get<int>() < 0) {
        throw std::invalid_argument("document needs a nonnegative integer field n");
    }
    return doc["n"].get<int>();
}

double offset_field(const json &doc) {
    if (!doc.contains("offset")) {
        return 0.0;
    }
    if (!doc["offset"].is_number()) {
        throw std::invalid_argument("offset must be a number");
    }
    return doc["offset"].get<double>();
}

json optional_number(const std::optional<double> &v) { return v ? json(*v) : json(nullptr); }

} // namespace

Graph parse_graph(const std::string &text) {
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    std::optional<Graph> g;
    while (std::getline(in, raw)) {
        ++line;
        const std::string s = trim(raw);
        if (s.empty() || s[0] == '#') {
            continue;
        }
        std::istringstream fields(s);
        if (!g) {
            std::string key;
            long count = 0;
            std::string extra;
            if (!(fields >> key >> count) || key != "n" || (fields >> extra)) {
                fail_line(line, "expected header 'n <count>'");
            }
            if (count < 1 || count > 1'000'000) {
                fail_line(line, "vertex count must be positive");
            }
            g.emplace(static_cast<int>(count));
            continue;
        }
        long u = 0;
        long v = 0;
        double w = 0;
        std::string extra;
        if (!(fields >> u >> v >> w) || (fields >> extra)) {
            fail_line(line, "expected edge 'u v w'");
        }
        try {
            g->add_edge(static_cast<int>(u), static_cast<int>(v), w);
        } catch (const std::invalid_argument &e) {
            fail_line(line, e.what());
        }
    }
    if (!g) {
        throw std::invalid_argument("graph file has no 'n <count>' header");
    }
    return *g;
}

std::string format_graph(const Graph &g) {
    std::string out = "n " + std::to_string(g.size()) + "\n";
    for (const auto &e : g.edges()) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%d %d %.17g\n", e.u, e.v, e.weight);
        out += buf;
    }
    return out;
}

std::string read_text_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::invalid_argument("cannot open '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::invalid_argument("cannot write '" + path + "'");
    }
    out << text;
    if (!out) {
        throw std::runtime_error("write to '" + path + "' failed");
    }
}

json qubo_to_json(const Qubo &q) {
    return {{"type", "qubo"}, {"n", q.n}, {"Q", matrix_to_json(q.Q)}, {"offset", q.offset}};
}

Qubo qubo_from_json(const json &doc) {
    const int n = size_field(doc);
    if (doc.contains("type") && doc["type"] != "qubo") {
        throw std::invalid_argument("document is not a QUBO");
    }
    if (!doc.contains("Q")) {
        throw std::invalid_argument("QUBO document needs a matrix Q");
    }
    Qubo q(matrix_from_json(doc["Q"], n, "Q"), offset_field(doc));
    q.validate();
    return q;
}

json ising_to_json(const IsingProblem &p) {
    json h = json::array();
    for (Eigen::Index i = 0; i < p.h.size(); ++i) {
        h.push_back(p.h(i));
    }
    return {{"type", "ising"}, {"n", p.n}, {"J", matrix_to_json(p.J)}, {"h", h}, {"offset", p.offset}};
}

IsingProblem ising_from_json(const json &doc) {
    const int n = size_field(doc);
    if (doc.contains("type") && doc["type"] != "ising") {
        throw std::invalid_argument("document is not an Ising problem");
    }
    if (!doc.contains("J")) {
        throw std::invalid_argument("Ising document needs a matrix J");
    }
    Eigen::VectorXd h = Eigen::VectorXd::Zero(n);
    if (doc.contains("h")) {
        const json &hv = doc["h"];
        if (!hv.is_array() || static_cast<int>(hv.size()) != n) {
            throw std::invalid_argument("h must be an array of " + std::to_string(n) + " numbers");
        }
        for (int i = 0; i < n; ++i) {
            if (!hv[static_cast<size_t>(i)].is_number()) {
                throw std::invalid_argument("h entries must be numbers");
            }
            h(i) = hv[static_cast<size_t>(i)].get<double>();
        }
    }
    IsingProblem p(matrix_from_json(doc["J"], n, "J"), h, offset_field(doc));
    p.validate();
    return p;
}

json machine_to_json(const MachineConfig &m) {
    json detuning = json::array();
    for (double d : m.detuning) {
        detuning.push_back(d);
    }
    return {
        {"n", m.n},
        {"f0_hz", m.f0},
        {"global_scale", m.global_scale},
        {"noise_sigma", m.noise_sigma},
        {"detuning", detuning},
        {"quantizer", {{"bits", m.coupling.quantizer.bits}, {"full_scale", m.coupling.quantizer.full_scale}}},
        {"coupling", {{"codes", int_matrix_to_json(m.coupling.codes)},
                      {"signs", int_matrix_to_json(m.coupling.signs)},
                      {"symmetric", m.coupling.symmetric}}},
        {"shil",
         {{"enabled", m.shil.enabled},
          {"frequency_ratio", m.shil.frequency_ratio},
          {"auto_amplitude", m.shil.auto_amplitude},
          {"amplitude", m.shil.amplitude},
          {"auto_ratio", m.shil.auto_ratio},
          {"floor", m.shil.floor},
          {"ramp_periods", m.shil.ramp_periods},
          {"resolved_amplitude", shil_amplitude(m)}}},
    };
}

json backend_to_json(const BackendConfig &b) {
    json doc = {{"kind", backend_name(b.kind)},
                {"tolerance_rad", b.tolerance_rad},
                {"hold_periods", b.hold_periods}};
    if (b.kind == BackendKind::Phase) {
        doc["phase"] = {{"steps_per_period", b.phase.steps_per_period}, {"sample_rate", b.phase_sample_rate}};
    } else {
        doc["circuit"] = {
            {"R_ohm", b.osc.R},
            {"C_farad", b.osc.C},
            {"gain", b.osc.gain},
            {"sat_level_v", b.osc.sat_level},
            {"asymmetry", b.osc.asymmetry},
            {"sync_gain", b.osc.sync_gain},
            {"shil_volts_per_unit", b.osc.shil_volts_per_unit},
            {"steps_per_period", b.circuit.steps_per_period},
            {"detuning_jitter", b.detuning_jitter},
            {"phase_offset_rad", b.circuit_phase_offset},
            {"detector",
             {{"integrator_rate", b.detector.integrator_rate},
              {"limit", b.detector.limit},
              {"settle_periods", b.detector.settle_periods},
              {"dead_zone", b.detector.dead_zone}}},
        };
    }
    return doc;
}

json schedule_to_json(const RunSchedule &s) {
    return {{"free_run_periods", s.free_run_periods},
            {"settle_periods", s.settle_periods},
            {"staggered_activation", s.staggered_activation.size() != 0 ? matrix_to_json(s.staggered_activation)
                                                                        : json(nullptr)}};
}

json stats_to_json(const RunStats &s) {
    return {
        {"runs", s.runs},
        {"successes", s.successes},
        {"success_rate", s.success_rate},
        {"mean_lock_period", optional_number(s.mean_lock_period)},
        {"median_lock_period", optional_number(s.median_lock_period)},
        {"locked_runs", s.locked_runs},
        {"unresolved_runs", s.unresolved_runs},
        {"unresolved_rate", s.unresolved_rate},
        {"max_phase_error_locked_rad", s.max_phase_error_locked},
        {"histogram", s.histogram},
        {"optimum_frequencies", s.optimum_frequencies},
    };
}

json result_document(const Instance &inst, const MachineConfig &m, const BackendConfig &b, const RunSchedule &sched,
                     const RunStats &stats, int runs, uint64_t seed) {
    json edges = json::array();
    for (const auto &e : inst.graph.edges()) {
        edges.push_back({e.u, e.v, e.weight});
    }
    return {
        {"instance", {{"n", inst.graph.size()}, {"edges", edges}, {"total_weight", inst.graph.total_weight()}}},
        {"oracle", {{"optimum", inst.oracle.optimum}, {"optimal_bitstrings", inst.oracle.normalized_bitstrings()}}},
        {"results", stats_to_json(stats)},
        {"config",
         {{"machine", machine_to_json(m)},
          {"backend", backend_to_json(b)},
          {"schedule", schedule_to_json(sched)},
          {"runs", runs},
          {"seed", seed}}},
    };
}

std::string trace_csv(const RunTrace &trace) {
    std::string out = "t_periods";
    const size_t n = trace.values.empty() ? 0 : trace.values.front().size();
    for (size_t i = 0; i < n; ++i) {
        out += ",osc" + std::to_string(i + 1);
    }
    out += ",sync\n";
    for (size_t k = 0; k < trace.t_periods.size(); ++k) {
        out += fmt(trace.t_periods[k]);
        for (double v : trace.values[k]) {
            out += "," + fmt(v);
        }
        out += trace.sync[k] ? ",1\n" : ",0\n";
    }
    return out;
}

std::string sweep_csv(const std::vector<SweepRow> &rows) {
    std::string out = "scale,success_rate,mean_lock_period\n";
    for (const auto &r : rows) {
        out += fmt(r.scale) + "," + fmt(r.stats.success_rate) + ",";
        if (r.stats.mean_lock_period) {
            out += fmt(*r.stats.mean_lock_period);
        }
        out += "\n";
    }
    return out;
}

} // namespace oscim
