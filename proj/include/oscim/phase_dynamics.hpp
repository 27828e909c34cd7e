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

#ifndef OSCIM_PHASE_DYNAMICS_HPP_
#define OSCIM_PHASE_DYNAMICS_HPP_

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <vector>

#include "oscim/machine.hpp"
#include "oscim/rng.hpp"

namespace oscim {

/// Oscillator phases in the frame rotating at the resonance frequency.
/// Time is measured in oscillation periods T0 = 1 / f0.
struct PhaseState {
    std::vector<double> theta;
    double t = 0;
};

/// Sampled phase trajectory, the simulator's oscilloscope.
struct PhaseTrace {
    std::vector<double> times;
    std::vector<std::vector<double>> phases;
    std::optional<double> sync_on;

    size_t size() const { return times.size(); }
};

/// Phase-reduced network of SHIL-locked oscillators.
///
/// In period units the phases obey
///
///   dtheta_i/dt = 2 pi [ delta_i + sum_j w_ij(t) sin(theta_i - theta_j)
///                        - k_s(t) sin(2 theta_i) ]
///
/// where w is the gated effective weight matrix and k_s the SHIL envelope. A
/// positive weight repels the two phases towards antiphase because the sync
/// input of each oscillator is inverting. With symmetric weights and no
/// detuning this is gradient descent, scaled by 2 pi, on
///
///   E(theta) = sum_{i<j} w_ij cos(theta_i - theta_j) - k_s / 2 sum_i cos(2 theta_i).
class PhaseModel {
  public:
    explicit PhaseModel(const MachineConfig &m);

    int size() const { return n_; }
    const MachineConfig &machine() const { return machine_; }

    void derivative(std::span<const double> theta, double t, std::span<double> out) const;
    /// Same, with sync gating and staggered masks taken at `gate_t` instead of
    /// t. Integrators pass the start of the current step so a step that ends on
    /// a switch time does not see the switch.
    void derivative(std::span<const double> theta, double t, double gate_t, std::span<double> out) const;
    double energy(std::span<const double> theta, double t) const;
    /// Times (period units) where the right-hand side switches discontinuously.
    std::vector<double> breakpoints() const;

  private:
    MachineConfig machine_;
    int n_;
    Eigen::MatrixXd weights_;
    double shil_full_;
};

std::vector<double> phase_derivative(const PhaseState &s, const MachineConfig &m);
double phase_energy(const PhaseState &s, const MachineConfig &m);

/// One classical Runge-Kutta step of length dt (periods), followed by Gaussian
/// phase increments of standard deviation noise_sigma * sqrt(dt) when noise is on.
PhaseState step(const PhaseState &s, const MachineConfig &m, double dt, Rng &rng);

/// Independent uniform phases on [0, 2 pi), at t = 0.
PhaseState random_initial_phases(int n, Rng &rng);

struct PhaseSimOptions {
    int steps_per_period = 200;
};

/// Integrates for `duration_periods` with a fixed step of 1 / steps_per_period,
/// splitting steps at /SYNC and staggered-weight switch times. Samples are
/// taken every round(steps_per_period / sample_rate) steps, starting at the
/// initial state.
PhaseTrace simulate(const MachineConfig &m, const PhaseState &init, double duration_periods, double sample_rate,
                    Rng &rng, const PhaseSimOptions &options = {});

/// theta wrapped onto (-pi, pi].
double wrap_phase(double theta);

} // namespace oscim

#endif // OSCIM_PHASE_DYNAMICS_HPP_
