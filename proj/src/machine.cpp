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

#include "oscim/machine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace oscim {

void Quantizer::validate() const {
    if (bits < 1 || bits > 16) {
        throw std::invalid_argument("quantizer bits must be in [1, 16], got " + std::to_string(bits));
    }
    if (!(full_scale > 0) || !std::isfinite(full_scale)) {
        throw std::invalid_argument("quantizer full scale must be positive");
    }
}

int Quantizer::quantize(double weight) const {
    validate();
    if (!(weight >= 0 && weight <= full_scale)) {
        throw std::out_of_range("weight " + std::to_string(weight) + " outside [0, " +
                                std::to_string(full_scale) + "]");
    }
    // Round half up.
    return static_cast<int>(std::floor(weight / full_scale * max_code() + 0.5));
}

double Quantizer::dequantize(int code) const {
    validate();
    if (code < 0 || code > max_code()) {
        throw std::out_of_range("code " + std::to_string(code) + " outside [0, " + std::to_string(max_code()) +
                                "]");
    }
    return static_cast<double>(code) / max_code() * full_scale;
}

int quantize(double weight, const Quantizer &q) { return q.quantize(weight); }
double dequantize(int code, const Quantizer &q) { return q.dequantize(code); }

CouplingMatrix::CouplingMatrix(int n, Quantizer q)
    : n(n), codes(Eigen::MatrixXi::Zero(n, n)), signs(Eigen::MatrixXi::Zero(n, n)), quantizer(q) {}

void CouplingMatrix::validate() const {
    quantizer.validate();
    if (codes.rows() != n || codes.cols() != n || signs.rows() != n || signs.cols() != n) {
        throw std::invalid_argument("coupling planes do not match n=" + std::to_string(n));
    }
    for (int i = 0; i < n; ++i) {
        if (codes(i, i) != 0 || signs(i, i) != 0) {
            throw std::invalid_argument("coupling diagonal must be zero");
        }
        for (int j = 0; j < n; ++j) {
            if (codes(i, j) < 0 || codes(i, j) > quantizer.max_code()) {
                throw std::invalid_argument("coupling code out of range");
            }
            if (signs(i, j) < -1 || signs(i, j) > 1) {
                throw std::invalid_argument("coupling sign must be -1, 0 or +1");
            }
            if (symmetric && (codes(i, j) != codes(j, i) || signs(i, j) != signs(j, i))) {
                throw std::invalid_argument("coupling flagged symmetric but planes differ");
            }
        }
    }
}

void ShilConfig::validate() const {
    if (frequency_ratio != 2.0) {
        throw std::invalid_argument("SHIL must run at twice the resonance frequency");
    }
    if (!(amplitude >= 0) || !(auto_ratio >= 0) || !(floor >= 0) || !(ramp_periods >= 0)) {
        throw std::invalid_argument("SHIL amplitude, ratio, floor and ramp must be nonnegative");
    }
}

void MachineConfig::validate() const {
    if (n < 2) {
        throw std::invalid_argument("machine needs at least two oscillators");
    }
    if (!(f0 > 0)) {
        throw std::invalid_argument("resonance frequency must be positive");
    }
    if (!(global_scale >= 0) || !std::isfinite(global_scale)) {
        throw std::invalid_argument("global coupling scale must be nonnegative");
    }
    if (!(noise_sigma >= 0)) {
        throw std::invalid_argument("noise strength must be nonnegative");
    }
    if (coupling.n != n) {
        throw std::invalid_argument("coupling matrix size differs from oscillator count");
    }
    if (static_cast<int>(detuning.size()) != n) {
        throw std::invalid_argument("detuning needs one entry per oscillator");
    }
    if (weight_delays.size() != 0 &&
        (weight_delays.rows() != n || weight_delays.cols() != n || (weight_delays.array() < 0).any())) {
        throw std::invalid_argument("weight delays must be a nonnegative n x n matrix");
    }
    coupling.validate();
    shil.validate();
}

CouplingMatrix build_coupling(const Graph &g, int machine_n, const Quantizer &q) {
    q.validate();
    if (g.size() > machine_n) {
        throw std::invalid_argument("graph with " + std::to_string(g.size()) + " vertices does not fit a " +
                                    std::to_string(machine_n) + "-oscillator machine");
    }
    CouplingMatrix c(machine_n, q);
    double max_abs = 0;
    for (const auto &e : g.edges()) {
        max_abs = std::max(max_abs, std::abs(e.weight));
    }
    if (max_abs == 0) {
        return c;
    }
    for (const auto &e : g.edges()) {
        const int code = q.quantize(std::abs(e.weight) / max_abs * q.full_scale);
        const int sign = (e.weight > 0) - (e.weight < 0);
        const int i = e.u - 1;
        const int j = e.v - 1;
        c.codes(i, j) = c.codes(j, i) = code;
        c.signs(i, j) = c.signs(j, i) = code == 0 ? 0 : sign;
    }
    return c;
}

Eigen::MatrixXd effective_weights(const MachineConfig &m) {
    const auto &c = m.coupling;
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(c.n, c.n);
    for (int i = 0; i < c.n; ++i) {
        for (int j = 0; j < c.n; ++j) {
            if (i != j && c.signs(i, j) != 0) {
                w(i, j) = m.global_scale * c.signs(i, j) * c.quantizer.dequantize(c.codes(i, j));
            }
        }
    }
    return w;
}

MachineConfig set_sync(MachineConfig m, bool on, double at_period) {
    if (on && !m.sync_enabled) {
        m.sync_since = at_period;
    }
    m.sync_enabled = on;
    return m;
}

bool sync_active(const MachineConfig &m, double t_periods) { return m.sync_enabled && t_periods >= m.sync_since; }

Eigen::MatrixXd coupling_at(const MachineConfig &m, const Eigen::MatrixXd &weights, double t_periods) {
    if (!sync_active(m, t_periods)) {
        return Eigen::MatrixXd::Zero(weights.rows(), weights.cols());
    }
    if (m.weight_delays.size() == 0) {
        return weights;
    }
    const double elapsed = t_periods - m.sync_since;
    return (m.weight_delays.array() <= elapsed).select(weights, 0.0);
}

double shil_amplitude(const MachineConfig &m) {
    if (!m.shil.auto_amplitude) {
        return m.shil.amplitude;
    }
    const double row_sum = effective_weights(m).cwiseAbs().rowwise().sum().maxCoeff();
    return std::max(m.shil.floor, m.shil.auto_ratio * row_sum);
}

double shil_envelope(const MachineConfig &m, double t_periods) {
    return shil_envelope(m, shil_amplitude(m), t_periods);
}

double shil_envelope(const MachineConfig &m, double full, double t_periods) {
    if (!m.shil.enabled || !sync_active(m, t_periods)) {
        return 0.0;
    }
    const double elapsed = t_periods - m.sync_since;
    if (m.shil.ramp_periods <= 0) {
        return full;
    }
    return full * std::min(1.0, elapsed / m.shil.ramp_periods);
}

std::vector<double> sync_drive(const MachineConfig &m, const Eigen::MatrixXd &weights, double t_periods,
                               std::span<const double> outputs, double shil_signal) {
    const int n = static_cast<int>(outputs.size());
    std::vector<double> drive(static_cast<size_t>(n), 0.0);
    if (!sync_active(m, t_periods)) {
        return drive;
    }
    const Eigen::MatrixXd w = coupling_at(m, weights, t_periods);
    for (int i = 0; i < n; ++i) {
        double column = 0;
        for (int j = 0; j < n; ++j) {
            column -= w(i, j) * outputs[static_cast<size_t>(j)];
        }
        // The output summer inverts the column sum back and adds the SHIL
        // source, which is wired in with its own inversion.
        drive[static_cast<size_t>(i)] = -(column + (-shil_signal));
    }
    return drive;
}

MachineConfig make_machine(const Graph &g, const MachineOptions &options) {
    MachineConfig m;
    m.n = options.n;
    m.coupling = build_coupling(g, options.n, options.quantizer);
    m.global_scale = options.global_scale;
    m.shil = options.shil;
    m.f0 = options.f0;
    m.noise_sigma = options.noise_sigma;
    m.detuning = options.detuning.empty() ? std::vector<double>(static_cast<size_t>(options.n), 0.0)
                                          : options.detuning;
    m.sync_enabled = false;
    m.validate();
    return m;
}

} // namespace oscim
