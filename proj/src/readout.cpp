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

#include "oscim/readout.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace oscim {

void DetectorParams::validate() const {
    if (!(integrator_rate > 0) || !(limit > 0) || !(settle_periods > 0) || !(dead_zone >= 0)) {
        throw std::invalid_argument("detector parameters must be positive");
    }
    if (dead_zone >= limit) {
        throw std::invalid_argument("detector dead zone must be below the limit");
    }
}

int ReadoutResult::unresolved_count() const {
    return static_cast<int>(std::count(resolved.begin(), resolved.end(), false));
}

double phase_detector(std::span<const double> x_i, std::span<const double> x_ref, double dt, double period,
                      const DetectorParams &p) {
    p.validate();
    if (x_i.size() != x_ref.size()) {
        throw std::invalid_argument("detector waveforms differ in length");
    }
    if (!(dt > 0) || !(period > 0)) {
        throw std::invalid_argument("sample spacing and period must be positive");
    }
    const auto window = static_cast<size_t>(std::llround(p.settle_periods * period / dt));
    if (window == 0 || window > x_i.size()) {
        throw std::invalid_argument("waveform shorter than the detector settle window");
    }
    double acc = 0;
    for (size_t k = x_i.size() - window; k < x_i.size(); ++k) {
        acc = std::clamp(acc + p.integrator_rate * x_i[k] * x_ref[k] * dt, -p.limit, p.limit);
    }
    return acc;
}

double binarization_error(double theta) {
    const double a = std::abs(wrap_phase(theta));
    return std::min(a, std::numbers::pi - a);
}

ReadoutResult spins_from_phases(const PhaseState &s, double tolerance_rad) {
    const int n = static_cast<int>(s.theta.size());
    if (n < 1) {
        throw std::invalid_argument("readout needs at least one oscillator");
    }
    std::vector<int8_t> raw(static_cast<size_t>(n));
    ReadoutResult r;
    r.resolved.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double th = s.theta[static_cast<size_t>(i)];
        raw[static_cast<size_t>(i)] = std::cos(th) >= 0 ? 1 : -1;
        r.resolved[static_cast<size_t>(i)] = binarization_error(th) <= tolerance_rad;
    }
    r.spins = SpinConfig(std::move(raw)).normalized();
    for (int i = 1; i < n; ++i) {
        r.detector_values.push_back(std::cos(s.theta[static_cast<size_t>(i)] - s.theta[0]));
    }
    return r;
}

ReadoutResult spins_from_detectors(std::span<const double> detector_values, double dead_zone) {
    ReadoutResult r;
    std::vector<int8_t> spins{1};
    r.resolved.push_back(true);
    for (double v : detector_values) {
        spins.push_back(v >= 0 ? 1 : -1);
        r.resolved.push_back(std::abs(v) > dead_zone);
        r.detector_values.push_back(v);
    }
    r.spins = SpinConfig(std::move(spins));
    return r;
}

std::optional<double> lock_period(const PhaseTrace &trace, double tolerance_rad, double hold_periods) {
    if (!trace.sync_on) {
        throw std::invalid_argument("trace has no sync-on time");
    }
    const double on = *trace.sync_on;
    auto binarized = [&](size_t k) {
        return std::all_of(trace.phases[k].begin(), trace.phases[k].end(),
                           [&](double th) { return binarization_error(th) <= tolerance_rad; });
    };
    // Start of the current run of binarized samples, if any.
    std::optional<size_t> start;
    for (size_t k = 0; k < trace.size(); ++k) {
        if (trace.times[k] < on) {
            continue;
        }
        if (!binarized(k)) {
            start.reset();
            continue;
        }
        if (!start) {
            start = k;
        }
        if (trace.times[k] - trace.times[*start] >= hold_periods - 1e-9) {
            return trace.times[*start] - on;
        }
    }
    return std::nullopt;
}

} // namespace oscim
