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

#include "oscim/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace oscim {
namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

// Start-up data for circuit runs depends only on the oscillator parameters, so
// it is computed once per parameter set and shared between runs.
struct CircuitStart {
    std::vector<OscillatorState> cycle;
    double cycle_phase = 0;
    double lock_phase = 0;
};

const CircuitStart &circuit_start(const OscParams &p, double f0, double shil_strength) {
    using Key = std::tuple<double, double, double, double, double, double, double, double, double>;
    static std::mutex mutex;
    static std::map<Key, CircuitStart> cache;
    const Key key{p.R, p.C, p.gain, p.sat_level, p.asymmetry, p.sync_gain, p.shil_volts_per_unit, f0, shil_strength};
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) {
        return it->second;
    }
    constexpr int kSamples = 400;
    CircuitStart s;
    s.cycle = limit_cycle(p, f0, kSamples);
    std::vector<double> u;
    for (const auto &o : s.cycle) {
        u.push_back(o.u);
    }
    // The samples span one true period, so probing at 1 / (N dt) is exact.
    s.cycle_phase = fundamental_phase(u, 1.0 / kSamples, 1.0);
    s.lock_phase = shil_strength > 0 ? shil_lock_phase(p, f0, shil_strength) : 0.0;
    return cache.emplace(key, std::move(s)).first->second;
}

// Interpolates linearly between neighbouring orbit samples, so that nearby
// phases give distinct states.
OscillatorState state_at_phase(const CircuitStart &s, double phase) {
    const auto n = static_cast<long>(s.cycle.size());
    const double pos = (phase - s.cycle_phase) / kTwoPi * static_cast<double>(n);
    const double base = std::floor(pos);
    const double frac = pos - base;
    long k = static_cast<long>(base);
    k = ((k % n) + n) % n;
    const OscillatorState &a = s.cycle[static_cast<size_t>(k)];
    const OscillatorState &b = s.cycle[static_cast<size_t>((k + 1) % n)];
    OscillatorState out;
    for (size_t c = 0; c < 3; ++c) {
        out.caps[c] = (1 - frac) * a.caps[c] + frac * b.caps[c];
    }
    out.u = (1 - frac) * a.u + frac * b.u;
    return out;
}

PhaseTrace restrict(const PhaseTrace &t, int n) {
    PhaseTrace out;
    out.times = t.times;
    out.sync_on = t.sync_on;
    out.phases.reserve(t.phases.size());
    for (const auto &row : t.phases) {
        out.phases.emplace_back(row.begin(), row.begin() + n);
    }
    return out;
}

struct Readout {
    ReadoutResult result;
    double max_error = 0;
};

Readout read_phase_backend(const MachineConfig &m, const BackendConfig &b, const RunSchedule &sched, int n,
                           const PhaseState &init, Rng &rng, RunTrace *trace) {
    const PhaseTrace tr = simulate(m, init, sched.settle_periods, b.phase_sample_rate, rng, b.phase);
    const PhaseState last{std::vector<double>(tr.phases.back().begin(), tr.phases.back().begin() + n),
                          tr.times.back()};
    Readout r;
    r.result = spins_from_phases(last, b.tolerance_rad);
    r.result.lock_period = lock_period(restrict(tr, n), b.tolerance_rad, b.hold_periods);
    for (double th : last.theta) {
        r.max_error = std::max(r.max_error, binarization_error(th));
    }
    if (trace != nullptr) {
        trace->t_periods = tr.times;
        trace->values = tr.phases;
        for (double t : tr.times) {
            trace->sync.push_back(sync_active(m, t));
        }
    }
    return r;
}

Readout read_circuit_backend(MachineConfig m, const BackendConfig &b, const RunSchedule &sched, int n,
                             const PhaseState &init, Rng &rng, RunTrace *trace) {
    std::normal_distribution<double> jitter(0.0, b.detuning_jitter);
    for (auto &d : m.detuning) {
        d += b.detuning_jitter > 0 ? jitter(rng) : 0.0;
    }
    const CircuitStart &start = circuit_start(b.osc, m.f0, m.shil.enabled ? shil_amplitude(m) : 0.0);
    CircuitState state;
    for (int i = 0; i < m.n; ++i) {
        state.osc.push_back(state_at_phase(start, init.theta[static_cast<size_t>(i)] + start.lock_phase + b.circuit_phase_offset));
    }
    const double periods = sched.free_run_periods + sched.settle_periods;
    const CircuitTrace tr = simulate_circuit(m, b.osc, state, periods / m.f0, b.circuit.steps_per_period, rng,
                                             b.circuit);

    std::vector<double> values;
    const std::vector<double> ref = tr.waveform(0);
    for (int i = 1; i < n; ++i) {
        const std::vector<double> x = tr.waveform(i);
        values.push_back(phase_detector(x, ref, tr.sample_interval, 1.0 / m.f0, b.detector));
    }
    Readout r;
    r.result = spins_from_detectors(values, b.detector.dead_zone);
    const PhaseTrace rel = restrict(relative_phase_trace(tr, m.f0), n);
    r.result.lock_period = lock_period(rel, b.tolerance_rad, b.hold_periods);
    // A saturated detector cannot tell a clean lock from a splay state, so the
    // measured relative phase must also be binarized.
    const std::vector<double> &last = rel.phases.back();
    for (int i = 0; i < n; ++i) {
        const double err = binarization_error(last[static_cast<size_t>(i)]);
        r.max_error = std::max(r.max_error, err);
        if (err > b.tolerance_rad) {
            r.result.resolved[static_cast<size_t>(i)] = false;
        }
    }
    if (trace != nullptr) {
        for (size_t k = 0; k < tr.size(); ++k) {
            const double t = tr.times[k] * m.f0;
            trace->t_periods.push_back(t);
            trace->values.push_back(tr.outputs[k]);
            trace->sync.push_back(sync_active(m, t));
        }
    }
    return r;
}

} // namespace

void RunSchedule::validate() const {
    if (!(free_run_periods >= 0) || !(settle_periods > 0)) {
        throw std::invalid_argument("free-run duration must be nonnegative and settle duration positive");
    }
    if ((staggered_activation.array() < 0).any()) {
        throw std::invalid_argument("activation delays must be nonnegative");
    }
}

const char *backend_name(BackendKind kind) { return kind == BackendKind::Phase ? "phase" : "circuit"; }

BackendKind parse_backend(const std::string &name) {
    if (name == "phase") {
        return BackendKind::Phase;
    }
    if (name == "circuit") {
        return BackendKind::Circuit;
    }
    throw std::invalid_argument("unknown backend '" + name + "' (expected phase or circuit)");
}

Instance::Instance(Graph g) : graph(std::move(g)), oracle(brute_force_max_cut(graph)) {}

RunResult run_once(const Instance &inst, const MachineConfig &m, const BackendConfig &backend,
                   const RunSchedule &sched, uint64_t seed, RunTrace *trace) {
    sched.validate();
    m.validate();
    const int n = inst.graph.size();
    if (n > m.n) {
        throw std::invalid_argument("graph has more vertices than the machine has oscillators");
    }
    Rng rng(seed);

    // Steps 1 and 2: all sync inputs off, weights as programmed in m.
    MachineConfig mc = set_sync(m, false);
    mc.weight_delays = sched.staggered_activation;
    // Step 3: free run from random phases.
    PhaseState init = random_initial_phases(mc.n, rng);
    // Step 4: every sync input on at once.
    const double on = sched.free_run_periods;
    mc = set_sync(mc, true, on);
    init.t = on;

    // Steps 5 and 6: settle, then read.
    const Readout r = backend.kind == BackendKind::Phase
                          ? read_phase_backend(mc, backend, sched, n, init, rng, trace)
                          : read_circuit_backend(mc, backend, sched, n, init, rng, trace);

    RunResult out;
    out.bitstring = r.result.spins.bitstring();
    out.cut = cut_value(inst.graph, r.result.spins);
    out.unresolved_count = r.result.unresolved_count();
    out.lock_period = r.result.lock_period;
    out.max_phase_error = r.max_error;
    out.optimal = out.unresolved_count == 0 &&
                  std::abs(out.cut - inst.oracle.optimum) <= oracle_tie_tolerance(inst.oracle.optimum);
    return out;
}

RunStats aggregate(const Instance &inst, const std::vector<RunResult> &results) {
    RunStats s;
    for (const auto &b : inst.oracle.normalized_bitstrings()) {
        s.optimum_frequencies[b] = 0;
    }
    std::vector<double> locks;
    for (const auto &r : results) {
        ++s.runs;
        ++s.histogram[r.bitstring];
        if (r.optimal) {
            ++s.successes;
            ++s.optimum_frequencies[r.bitstring];
        }
        if (r.unresolved_count > 0) {
            ++s.unresolved_runs;
        }
        if (r.lock_period) {
            locks.push_back(*r.lock_period);
            s.max_phase_error_locked = std::max(s.max_phase_error_locked, r.max_phase_error);
        }
    }
    if (s.runs > 0) {
        s.success_rate = static_cast<double>(s.successes) / s.runs;
        s.unresolved_rate = static_cast<double>(s.unresolved_runs) / s.runs;
    }
    s.locked_runs = static_cast<int>(locks.size());
    if (!locks.empty()) {
        double sum = 0;
        for (double v : locks) {
            sum += v;
        }
        s.mean_lock_period = sum / static_cast<double>(locks.size());
        std::sort(locks.begin(), locks.end());
        const size_t mid = locks.size() / 2;
        s.median_lock_period = locks.size() % 2 == 1 ? locks[mid] : 0.5 * (locks[mid - 1] + locks[mid]);
    }
    return s;
}

RunStats run_many(const Instance &inst, const MachineConfig &m, const BackendConfig &backend,
                  const RunSchedule &sched, int runs, uint64_t seed, unsigned threads) {
    if (runs < 1) {
        throw std::invalid_argument("runs must be at least 1");
    }
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = std::min(threads, static_cast<unsigned>(runs));

    std::vector<RunResult> results(static_cast<size_t>(runs));
    std::vector<std::exception_ptr> errors(static_cast<size_t>(runs));
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int k = next++; k < runs; k = next++) {
            try {
                results[static_cast<size_t>(k)] =
                    run_once(inst, m, backend, sched, derive_seed(seed, 0, static_cast<uint64_t>(k)));
            } catch (...) {
                errors[static_cast<size_t>(k)] = std::current_exception();
            }
        }
    };
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
        for (auto &t : pool) {
            t.join();
        }
    }
    // Report the failure of the earliest run so the error is reproducible too.
    for (const auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return aggregate(inst, results);
}

std::vector<SweepRow> sweep_coupling(const Instance &inst, const MachineConfig &m, const BackendConfig &backend,
                                     const RunSchedule &sched, const std::vector<double> &scales, int runs,
                                     uint64_t seed, unsigned threads) {
    if (scales.empty()) {
        throw std::invalid_argument("coupling sweep needs at least one scale");
    }
    std::vector<SweepRow> rows;
    for (double scale : scales) {
        MachineConfig point = m;
        point.global_scale = scale;
        rows.push_back({scale, run_many(inst, point, backend, sched, runs, seed, threads)});
    }
    return rows;
}

std::vector<double> default_sweep_scales() {
    std::vector<double> out;
    for (int k = 1; k <= 10; ++k) {
        out.push_back(0.05 * k);
    }
    return out;
}

StaggerReport staggered_activation_experiment(const Instance &inst, const MachineConfig &m,
                                              const BackendConfig &backend, const RunSchedule &sched,
                                              const Eigen::MatrixXd &delays, int runs, uint64_t seed,
                                              unsigned threads) {
    if (delays.rows() != m.n || delays.cols() != m.n || (delays.array() < 0).any()) {
        throw std::invalid_argument("delays must be a nonnegative matrix matching the machine size");
    }
    RunSchedule together = sched;
    together.staggered_activation.resize(0, 0);
    RunSchedule staggered = sched;
    staggered.staggered_activation = delays;
    staggered.settle_periods += delays.size() != 0 ? delays.maxCoeff() : 0.0;
    return {run_many(inst, m, backend, together, runs, seed, threads),
            run_many(inst, m, backend, staggered, runs, seed, threads)};
}

Eigen::MatrixXd edge_delays(const Graph &g, int machine_n, double spacing) {
    if (g.size() > machine_n) {
        throw std::invalid_argument("graph has more vertices than the machine has oscillators");
    }
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(machine_n, machine_n);
    int k = 0;
    for (const auto &e : g.edges()) {
        d(e.u - 1, e.v - 1) = d(e.v - 1, e.u - 1) = spacing * k++;
    }
    return d;
}

} // namespace oscim
