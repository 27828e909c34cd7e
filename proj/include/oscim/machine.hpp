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

#ifndef OSCIM_MACHINE_HPP_
#define OSCIM_MACHINE_HPP_

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <vector>

#include "oscim/graph.hpp"

namespace oscim {

/// Digital potentiometer resolution. Weights in [0, full_scale] map linearly
/// onto codes 0 .. 2^bits - 1, ties rounding up.
struct Quantizer {
    int bits = 10;
    double full_scale = 1.0;

    int max_code() const { return (1 << bits) - 1; }
    int quantize(double weight) const;
    double dequantize(int code) const;
    void validate() const;
};

/// Potentiometer settings of the coupling network: a magnitude plane of codes
/// plus a sign plane, both with a zero diagonal.
struct CouplingMatrix {
    int n = 0;
    Eigen::MatrixXi codes;
    Eigen::MatrixXi signs;
    bool symmetric = true;
    Quantizer quantizer;

    explicit CouplingMatrix(int n = 0, Quantizer q = {});

    /// Number of off-diagonal potentiometers, n * (n - 1).
    int weight_count() const { return n * (n - 1); }
    void validate() const;
};

/// Second-harmonic injection source.
///
/// `amplitude` is the dimensionless injection strength used when
/// `auto_amplitude` is false. In automatic mode the strength is
/// `auto_ratio` times the largest absolute row sum of the effective coupling,
/// never below `floor`. After sync-on the injection ramps linearly from zero
/// to full strength over `ramp_periods`.
struct ShilConfig {
    double frequency_ratio = 2.0;
    double amplitude = 0.05;
    bool auto_amplitude = true;
    double auto_ratio = 0.5;
    double floor = 0.05;
    double ramp_periods = 40.0;
    bool enabled = true;

    void validate() const;
};

inline constexpr double kDefaultGlobalScale = 0.2;
inline constexpr double kDefaultResonanceHz = 3800.0;

struct MachineConfig {
    int n = 8;
    CouplingMatrix coupling{8};
    double global_scale = kDefaultGlobalScale;
    ShilConfig shil;
    /// /SYNC state and the time (in periods) at which it last went active.
    bool sync_enabled = false;
    double sync_since = 0;
    double f0 = kDefaultResonanceHz;
    /// Relative frequency offsets per oscillator.
    std::vector<double> detuning = std::vector<double>(8, 0.0);
    double noise_sigma = 0;
    /// Optional per-weight enable delay in periods after sync-on. Empty means
    /// every weight switches together with /SYNC.
    Eigen::MatrixXd weight_delays;

    void validate() const;
};

int quantize(double weight, const Quantizer &q);
double dequantize(int code, const Quantizer &q);

/// Programs the coupling network from a graph: magnitudes are normalized to the
/// largest |mu| and quantized, signs go to the sign plane.
CouplingMatrix build_coupling(const Graph &g, int machine_n, const Quantizer &q = {});

/// w_ij = global_scale * sign_ij * dequantize(code_ij): the net drive that
/// oscillator j's output contributes to oscillator i's sync input after the
/// column summer and the re-inverting summer.
Eigen::MatrixXd effective_weights(const MachineConfig &m);

/// Switches every sync input at once. The switch time is recorded so a
/// simulation started earlier sees the change at exactly that instant.
MachineConfig set_sync(MachineConfig m, bool on, double at_period = 0);

bool sync_active(const MachineConfig &m, double t_periods);

/// Effective weights as seen by the sync inputs at time t: zero while /SYNC
/// is off, and masked by `weight_delays` when staggering is configured.
Eigen::MatrixXd coupling_at(const MachineConfig &m, const Eigen::MatrixXd &weights, double t_periods);

/// Resolved full-strength SHIL injection (automatic or fixed).
double shil_amplitude(const MachineConfig &m);

/// Injection strength at time t including gating and ramp.
double shil_envelope(const MachineConfig &m, double t_periods);
/// Same, with the full-strength amplitude already resolved.
double shil_envelope(const MachineConfig &m, double full_amplitude, double t_periods);

/// Drive at every sync input for the given oscillator outputs, passing through
/// the inverting column summers and the re-inverting output summers.
std::vector<double> sync_drive(const MachineConfig &m, const Eigen::MatrixXd &weights, double t_periods,
                               std::span<const double> outputs, double shil_signal);

/// Knobs for assembling a machine around a graph.
struct MachineOptions {
    int n = 8;
    double global_scale = kDefaultGlobalScale;
    Quantizer quantizer;
    double f0 = kDefaultResonanceHz;
    ShilConfig shil;
    double noise_sigma = 0;
    std::vector<double> detuning;
};

/// Machine with the graph's weights loaded and /SYNC off.
MachineConfig make_machine(const Graph &g, const MachineOptions &options = {});

} // namespace oscim

#endif // OSCIM_MACHINE_HPP_
