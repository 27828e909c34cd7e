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

#ifndef OSCIM_HARNESS_HPP_
#define OSCIM_HARNESS_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "oscim/circuit_dynamics.hpp"
#include "oscim/graph.hpp"
#include "oscim/machine.hpp"
#include "oscim/oracle.hpp"
#include "oscim/phase_dynamics.hpp"
#include "oscim/readout.hpp"

namespace oscim {

struct RunSchedule {
    double free_run_periods = 5.0;
    double settle_periods = 30.0;
    /// Per-weight enable delays in periods after sync-on; empty means every
    /// weight switches with /SYNC.
    Eigen::MatrixXd staggered_activation;

    void validate() const;
};

enum class BackendKind { Phase, Circuit };

const char *backend_name(BackendKind kind);
BackendKind parse_backend(const std::string &name);

struct BackendConfig {
    BackendKind kind = BackendKind::Phase;
    double tolerance_rad = kDefaultPhaseTolerance;
    double hold_periods = kDefaultHoldPeriods;

    PhaseSimOptions phase;
    /// Trace samples per period for the phase backend.
    double phase_sample_rate = 20.0;

    OscParams osc;
    CircuitSimOptions circuit;
    DetectorParams detector;
    /// Standard deviation of the relative frequency mismatch drawn per run.
    double detuning_jitter = 1e-3;
    /// Extra rotation (radians) applied when mapping phase-frame initial
    /// phases onto circuit oscillators, on top of the measured SHIL lock phase.
    double circuit_phase_offset = 0;
};

/// A graph together with its exact optimum.
struct Instance {
    Graph graph;
    OracleResult oracle;

    explicit Instance(Graph g);
};

struct RunResult {
    /// '0' for spin +1, oscillator 1 leftmost and always '0'.
    std::string bitstring;
    double cut = 0;
    bool optimal = false;
    std::optional<double> lock_period;
    int unresolved_count = 0;
    /// Largest distance of a final phase from {0, pi}, radians.
    double max_phase_error = 0;

    bool operator==(const RunResult &) const = default;
};

/// Sampled run for export: time in periods, one value per oscillator (phase
/// in radians or output in volts) and the /SYNC state.
struct RunTrace {
    std::vector<double> t_periods;
    std::vector<std::vector<double>> values;
    std::vector<bool> sync;
};

struct RunStats {
    std::map<std::string, int> histogram;
    int runs = 0;
    int successes = 0;
    double success_rate = 0;
    /// Over runs that locked; absent when none did.
    std::optional<double> mean_lock_period;
    std::optional<double> median_lock_period;
    int locked_runs = 0;
    /// Runs with at least one unresolved spin.
    int unresolved_runs = 0;
    double unresolved_rate = 0;
    /// Count of every optimal (normalized) bitstring, zeros included.
    std::map<std::string, int> optimum_frequencies;
    double max_phase_error_locked = 0;

    bool operator==(const RunStats &) const = default;
};

/// One pass of the run protocol: sync off, weights loaded, free run from random
/// phases, sync on, settle, read out. Deterministic in `seed`.
RunResult run_once(const Instance &inst, const MachineConfig &m, const BackendConfig &backend,
                   const RunSchedule &sched, uint64_t seed, RunTrace *trace = nullptr);

/// Aggregates `runs` runs with per-run seeds split from `seed`. `threads` = 0
/// picks the hardware concurrency; results do not depend on it.
RunStats run_many(const Instance &inst, const MachineConfig &m, const BackendConfig &backend,
                  const RunSchedule &sched, int runs, uint64_t seed, unsigned threads = 0);

/// Folds results, given in run order, into statistics.
RunStats aggregate(const Instance &inst, const std::vector<RunResult> &results);

struct SweepRow {
    double scale = 0;
    RunStats stats;
};

/// run_many at every global coupling scale, same master seed per point.
std::vector<SweepRow> sweep_coupling(const Instance &inst, const MachineConfig &m, const BackendConfig &backend,
                                     const RunSchedule &sched, const std::vector<double> &scales, int runs,
                                     uint64_t seed, unsigned threads = 0);

std::vector<double> default_sweep_scales();

struct StaggerReport {
    RunStats simultaneous;
    RunStats staggered;
};

/// Same runs with all weights switched together and with the given per-weight
/// delays; the staggered arm settles longer by the largest delay.
StaggerReport staggered_activation_experiment(const Instance &inst, const MachineConfig &m,
                                              const BackendConfig &backend, const RunSchedule &sched,
                                              const Eigen::MatrixXd &delays, int runs, uint64_t seed,
                                              unsigned threads = 0);

/// Per-edge delays: the k-th edge of the graph enables k * spacing periods
/// after sync-on, in both directions.
Eigen::MatrixXd edge_delays(const Graph &g, int machine_n, double spacing);

} // namespace oscim

#endif // OSCIM_HARNESS_HPP_
