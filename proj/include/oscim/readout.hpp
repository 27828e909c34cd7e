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

#ifndef OSCIM_READOUT_HPP_
#define OSCIM_READOUT_HPP_

#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "oscim/graph.hpp"
#include "oscim/phase_dynamics.hpp"

namespace oscim {

inline constexpr double kDefaultPhaseTolerance = 15.0 * std::numbers::pi / 180.0;
inline constexpr double kDefaultHoldPeriods = 2.0;

/// Multiplier followed by a diode-limited integrator.
struct DetectorParams {
    /// Integrator gain in 1 / (V s) for voltage waveforms.
    double integrator_rate = 2000.0;
    double limit = 5.0;
    /// Length of the integration window at the end of the run, in periods.
    double settle_periods = 5.0;
    /// Outputs with magnitude at or below this are unresolved.
    double dead_zone = 0.5;

    void validate() const;
};

struct ReadoutResult {
    /// Oscillator 1 is the reference and always reads +1.
    SpinConfig spins;
    /// One value per non-reference oscillator.
    std::vector<double> detector_values;
    std::vector<bool> resolved;
    std::optional<double> lock_period;

    int unresolved_count() const;
};

/// Clamped running integral of x_i * x_ref over the last settle_periods.
/// `dt` is the sample spacing and `period` the oscillation period, in the same
/// unit of time.
double phase_detector(std::span<const double> x_i, std::span<const double> x_ref, double dt, double period,
                      const DetectorParams &p);

/// Spin classes from absolute phases: +1 near 0, -1 near pi, unresolved in
/// between (the nearer class is kept as the spin). The result is flipped when
/// needed so that oscillator 1 reads +1. Detector values are cos(theta_i -
/// theta_1), the ideal normalized detector output.
ReadoutResult spins_from_phases(const PhaseState &s, double tolerance_rad = kDefaultPhaseTolerance);

/// Spins from detector outputs against oscillator 1.
ReadoutResult spins_from_detectors(std::span<const double> detector_values, double dead_zone);

/// Periods after sync-on until every phase stays within tolerance of {0, pi}
/// for hold_periods. Throws when the trace carries no sync-on time.
std::optional<double> lock_period(const PhaseTrace &trace, double tolerance_rad = kDefaultPhaseTolerance,
                                  double hold_periods = kDefaultHoldPeriods);

/// Distance of theta from the nearer of 0 and pi.
double binarization_error(double theta);

} // namespace oscim

#endif // OSCIM_READOUT_HPP_
