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

#include "oscim/phase_dynamics.hpp"

#include <algorithm>
#include <boost/numeric/odeint/stepper/runge_kutta4.hpp>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace oscim {
namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

using State = std::vector<double>;
using Stepper = boost::numeric::odeint::runge_kutta4<State>;

void check_finite(const State &x, double t) {
    for (size_t i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x[i])) {
            std::ostringstream msg;
            msg << "phase state diverged: oscillator " << i + 1 << " is non-finite at t=" << t << " periods";
            throw SimulationError(msg.str());
        }
    }
}

void add_noise(State &x, double sigma, double dt, Rng &rng) {
    if (sigma <= 0) {
        return;
    }
    std::normal_distribution<double> normal(0.0, sigma * std::sqrt(dt));
    for (auto &v : x) {
        v += normal(rng);
    }
}

} // namespace

double wrap_phase(double theta) {
    double r = std::remainder(theta, kTwoPi);
    if (r <= -std::numbers::pi) {
        r += kTwoPi;
    }
    return r;
}

PhaseModel::PhaseModel(const MachineConfig &m)
    : machine_(m), n_(m.n), weights_(effective_weights(m)), shil_full_(shil_amplitude(m)) {
    machine_.validate();
}

void PhaseModel::derivative(std::span<const double> theta, double t, std::span<double> out) const {
    derivative(theta, t, t, out);
}

void PhaseModel::derivative(std::span<const double> theta, double t, double gate_t, std::span<double> out) const {
    const bool coupled = sync_active(machine_, gate_t);
    // Without a ramp the envelope is piecewise constant and is gated like the
    // coupling; with a ramp it is continuous.
    const double env_t = machine_.shil.ramp_periods > 0 ? std::max(t, machine_.sync_since) : gate_t;
    const double ks = coupled ? shil_envelope(machine_, shil_full_, env_t) : 0.0;
    const bool staggered = coupled && machine_.weight_delays.size() != 0;
    const double elapsed = gate_t - machine_.sync_since;
    for (int i = 0; i < n_; ++i) {
        double rate = machine_.detuning[static_cast<size_t>(i)];
        if (coupled) {
            const double ti = theta[static_cast<size_t>(i)];
            for (int j = 0; j < n_; ++j) {
                const double w = weights_(i, j);
                if (w == 0 || (staggered && machine_.weight_delays(i, j) > elapsed)) {
                    continue;
                }
                rate += w * std::sin(ti - theta[static_cast<size_t>(j)]);
            }
            rate -= ks * std::sin(2 * ti);
        }
        out[static_cast<size_t>(i)] = kTwoPi * rate;
    }
}

double PhaseModel::energy(std::span<const double> theta, double t) const {
    const Eigen::MatrixXd w = coupling_at(machine_, weights_, t);
    const double ks = shil_envelope(machine_, shil_full_, t);
    double e = 0;
    for (int i = 0; i < n_; ++i) {
        const double ti = theta[static_cast<size_t>(i)];
        for (int j = i + 1; j < n_; ++j) {
            e += 0.5 * (w(i, j) + w(j, i)) * std::cos(ti - theta[static_cast<size_t>(j)]);
        }
        e -= 0.5 * ks * std::cos(2 * ti);
    }
    return e;
}

std::vector<double> PhaseModel::breakpoints() const {
    std::vector<double> out;
    if (!machine_.sync_enabled) {
        return out;
    }
    out.push_back(machine_.sync_since);
    if (machine_.shil.ramp_periods > 0) {
        out.push_back(machine_.sync_since + machine_.shil.ramp_periods);
    }
    for (Eigen::Index k = 0; k < machine_.weight_delays.size(); ++k) {
        out.push_back(machine_.sync_since + machine_.weight_delays.data()[k]);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<double> phase_derivative(const PhaseState &s, const MachineConfig &m) {
    PhaseModel model(m);
    std::vector<double> out(s.theta.size());
    model.derivative(s.theta, s.t, out);
    return out;
}

double phase_energy(const PhaseState &s, const MachineConfig &m) { return PhaseModel(m).energy(s.theta, s.t); }

PhaseState step(const PhaseState &s, const MachineConfig &m, double dt, Rng &rng) {
    if (!(dt > 0)) {
        throw std::invalid_argument("step size must be positive");
    }
    PhaseModel model(m);
    Stepper stepper;
    State x = s.theta;
    auto rhs = [&](const State &th, State &d, double t) { model.derivative(th, t, s.t, d); };
    stepper.do_step(rhs, x, s.t, dt);
    add_noise(x, m.noise_sigma, dt, rng);
    check_finite(x, s.t + dt);
    return {std::move(x), s.t + dt};
}

PhaseState random_initial_phases(int n, Rng &rng) {
    std::uniform_real_distribution<double> uniform(0.0, kTwoPi);
    PhaseState s;
    s.theta.resize(static_cast<size_t>(n));
    for (auto &v : s.theta) {
        v = uniform(rng);
    }
    return s;
}

PhaseTrace simulate(const MachineConfig &m, const PhaseState &init, double duration_periods, double sample_rate,
                    Rng &rng, const PhaseSimOptions &options) {
    if (!(duration_periods > 0)) {
        throw std::invalid_argument("simulation duration must be positive");
    }
    if (!(sample_rate >= 2)) {
        throw std::invalid_argument("sample rate must be at least 2 samples per period");
    }
    if (options.steps_per_period < 1) {
        throw std::invalid_argument("steps per period must be positive");
    }
    if (static_cast<int>(init.theta.size()) != m.n) {
        throw std::invalid_argument("initial state size differs from oscillator count");
    }
    PhaseModel model(m);
    double gate_t = init.t;
    auto rhs = [&](const State &th, State &d, double t) { model.derivative(th, t, gate_t, d); };
    Stepper stepper;

    const double dt = 1.0 / options.steps_per_period;
    const auto steps = static_cast<long>(std::llround(duration_periods * options.steps_per_period));
    const long stride = std::max(1L, std::lround(options.steps_per_period / sample_rate));
    const std::vector<double> breaks = model.breakpoints();

    PhaseTrace trace;
    if (m.sync_enabled) {
        trace.sync_on = std::max(m.sync_since, init.t);
    }
    trace.times.reserve(static_cast<size_t>(steps / stride + 1));
    trace.phases.reserve(static_cast<size_t>(steps / stride + 1));

    State x = init.theta;
    check_finite(x, init.t);
    trace.times.push_back(init.t);
    trace.phases.push_back(x);

    for (long k = 0; k < steps; ++k) {
        const double t0 = init.t + static_cast<double>(k) * dt;
        const double t1 = init.t + static_cast<double>(k + 1) * dt;
        double t = t0;
        // Land exactly on every switch time inside this step.
        for (double b : breaks) {
            if (b > t && b < t1) {
                gate_t = t;
                stepper.do_step(rhs, x, t, b - t);
                t = b;
            }
        }
        gate_t = t;
        stepper.do_step(rhs, x, t, t1 - t);
        add_noise(x, m.noise_sigma, dt, rng);
        check_finite(x, t1);
        if ((k + 1) % stride == 0) {
            trace.times.push_back(t1);
            trace.phases.push_back(x);
        }
    }
    return trace;
}

} // namespace oscim
