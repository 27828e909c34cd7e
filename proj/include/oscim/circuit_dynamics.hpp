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

#ifndef OSCIM_CIRCUIT_DYNAMICS_HPP_
#define OSCIM_CIRCUIT_DYNAMICS_HPP_

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "oscim/machine.hpp"
#include "oscim/phase_dynamics.hpp"
#include "oscim/rng.hpp"

namespace oscim {

/// Behavioral RC phase-shift oscillator.
///
/// A three-stage high-pass ladder (series C, shunt R) feeds the inverting input
/// of a saturating amplifier; the sync input acts through the amplifier with
/// the opposite sign, so a sinusoidal sync signal pulls the output into
/// antiphase with itself:
///
///   u = sat(gain * (-sync_gain * sync_in - v3))
///
/// The limiter is a tanh with levels sat_level * (1 +/- asymmetry) for positive
/// and negative excursions. The asymmetry gives the waveform the even
/// harmonics that second-harmonic injection needs to bind the phase.
///
/// The default C and sat_level are the result of calibrate() for 3.8 kHz and
/// 4 Vpp.
struct OscParams {
    double R = 10e3;
    double C = 1.6993090936812793e-09;
    double gain = 35.0;
    double sat_level = 3.1540098827035963;
    double asymmetry = 0.3;
    double sync_gain = 1.0 / 29.0;
    /// Volts of SHIL per unit of dimensionless injection strength.
    double shil_volts_per_unit = 40.0;

    double rc() const { return R * C; }
    void validate() const;
};

/// Ladder capacitor voltages (input side first) and the amplifier output.
/// Node voltages follow as v1 = u - q1, v2 = v1 - q2, v3 = v2 - q3.
struct OscillatorState {
    std::array<double, 3> caps{};
    double u = 0;

    std::array<double, 3> node_voltages() const;
};

struct CircuitState {
    std::vector<OscillatorState> osc;
    /// Seconds.
    double t = 0;
};

struct CircuitTrace {
    /// Seconds.
    std::vector<double> times;
    /// outputs[k][i]: output of oscillator i at sample k.
    std::vector<std::vector<double>> outputs;
    std::optional<double> sync_on;
    double sample_interval = 0;

    size_t size() const { return times.size(); }
    std::vector<double> waveform(int osc) const;
};

/// Amplifier output for the given ladder state and sync input.
double oscillator_output(const std::array<double, 3> &caps, double sync_in, const OscParams &p);

/// Ladder state derivative for one isolated oscillator; `u` is recomputed
/// from the capacitor voltages and returned alongside.
std::array<double, 3> oscillator_derivative(const OscillatorState &s, double sync_in, const OscParams &p,
                                            double rc_scale = 1.0);

/// Small-signal resonance 1 / (2 pi RC sqrt 6) of the ladder.
double analytic_frequency(const OscParams &p);

struct CircuitSimOptions {
    int steps_per_period = 400;
};

/// Integrates the coupled network for duration_s seconds with dt = 1 / (f0 *
/// steps_per_period). The sync drive of every oscillator is the gated
/// summer-chain output; the SHIL source is A(t) sin(2 * 2 pi f0 t) with
/// A(t) = shil_volts_per_unit * shil_envelope(t). `sample_rate` is in
/// samples per period.
CircuitTrace simulate_circuit(const MachineConfig &m, const OscParams &p, CircuitState &state, double duration_s,
                              double sample_rate, Rng &rng, const CircuitSimOptions &options = {});

/// Mean interval between rising zero crossings over the second half of the
/// trace. Throws when fewer than 20 crossings are found there.
double measure_free_run_frequency(const CircuitTrace &trace, int osc);
double measure_frequency(std::span<const double> waveform, double dt);

/// Peak-to-peak output over the second half of the trace.
double measure_peak_to_peak(const CircuitTrace &trace, int osc);

/// Phase (radians) of the fundamental at `freq` over the whole window, using
/// the convention x(t) = a cos(2 pi f t + phase).
double fundamental_phase(std::span<const double> waveform, double dt, double freq, double t0 = 0);

/// Brings the free-running frequency within tolerance of target_hz (starting
/// from the analytic RC) and the peak-to-peak amplitude to target_vpp.
OscParams calibrate(const OscParams &p, double target_hz, double target_vpp = 4.0, double tolerance = 0.002);

/// One period of a free-running oscillator's limit cycle sampled at
/// `samples` evenly spaced points, used to start oscillators at a chosen phase.
std::vector<OscillatorState> limit_cycle(const OscParams &p, double f0, int samples);

/// Phase (mod pi) at which a free-running oscillator settles under SHIL alone
/// with the given injection strength, measured against cos(2 pi f0 t).
double shil_lock_phase(const OscParams &p, double f0, double shil_strength);

/// Response of a single oscillator driven at its sync input by
/// amplitude_v * cos(2 pi freq t): fundamental phase of the output minus that of
/// the drive after `periods` periods, wrapped onto (-pi, pi].
double sync_phase_response(const OscParams &p, double freq, double amplitude_v, double periods = 200);

/// Per-window fundamental phases of every oscillator relative to oscillator 1,
/// one sample per period, timed in periods.
PhaseTrace relative_phase_trace(const CircuitTrace &trace, double f0);

} // namespace oscim

#endif // OSCIM_CIRCUIT_DYNAMICS_HPP_
