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

#include "oscim/circuit_dynamics.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <boost/numeric/odeint/stepper/runge_kutta4.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace oscim {
namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

using State = std::vector<double>;
using Stepper = boost::numeric::odeint::runge_kutta4<State>;

struct Limiter {
    double pos;
    double neg;

    explicit Limiter(const OscParams &p) : pos(p.sat_level * (1 + p.asymmetry)), neg(p.sat_level * (1 - p.asymmetry)) {}

    double value(double x) const {
        const double level = x >= 0 ? pos : neg;
        return level * std::tanh(x / level);
    }
    double slope(double x) const {
        const double th = std::tanh(x / (x >= 0 ? pos : neg));
        return 1 - th * th;
    }
};

// Solves u = sat(gain * (a - u)) for a single amplifier, where a collects the
// ladder charge and the sync input. The left side minus the right side is
// strictly increasing in u, so the root is unique and bracketed by the rails.
double solve_output(double a, const OscParams &p, const Limiter &lim, double guess) {
    double lo = -lim.neg;
    double hi = lim.pos;
    double u = std::clamp(guess, lo, hi);
    for (int it = 0; it < 60; ++it) {
        const double arg = p.gain * (a - u);
        const double r = u - lim.value(arg);
        if (r > 0) {
            hi = u;
        } else {
            lo = u;
        }
        const double dr = 1 + p.gain * lim.slope(arg);
        double next = u - r / dr;
        if (!(next > lo && next < hi)) {
            next = 0.5 * (lo + hi);
        }
        if (std::abs(next - u) <= 1e-14 * (1 + std::abs(u))) {
            return next;
        }
        u = next;
    }
    return u;
}

void ladder_rates(const double *q, double u, double rc, double *dq) {
    const double x1 = u - q[0];
    const double x2 = x1 - q[1];
    const double x3 = x2 - q[2];
    dq[0] = (x1 + x2 + x3) / rc;
    dq[1] = (x2 + x3) / rc;
    dq[2] = x3 / rc;
}

// Right-hand side of the coupled network. Amplifier outputs are algebraic and
// are re-solved at every evaluation; the last solution seeds the next Newton
// iteration.
class Network {
  public:
    Network(const MachineConfig &m, const OscParams &p)
        : m_(m), p_(p), lim_(p), n_(m.n), weights_(effective_weights(m)), shil_full_(shil_amplitude(m)),
          rc_(static_cast<size_t>(m.n)), u_(Eigen::VectorXd::Zero(m.n)) {
        for (int i = 0; i < n_; ++i) {
            rc_[static_cast<size_t>(i)] = p.rc() / (1 + m.detuning[static_cast<size_t>(i)]);
        }
    }

    void seed_outputs(const std::vector<OscillatorState> &osc) {
        for (int i = 0; i < n_; ++i) {
            u_(i) = osc[static_cast<size_t>(i)].u;
        }
    }

    // Sync gating and staggered masks are evaluated at min(t, gate). The step
    // loop sets gate to the start of the current step so a step that ends on a
    // switch time does not see the switch.
    void set_gate(double t_s) { gate_periods_ = t_s * m_.f0; }
    void clear_gate() { gate_periods_ = std::numeric_limits<double>::infinity(); }

    double shil_volts(double t) const {
        const double periods = t * m_.f0;
        const double gated = std::min(periods, gate_periods_);
        if (!sync_active(m_, gated)) {
            return 0.0;
        }
        const double env = shil_envelope(m_, shil_full_, m_.shil.ramp_periods > 0 ? periods : gated);
        const double amp = p_.shil_volts_per_unit * env;
        return amp * std::sin(m_.shil.frequency_ratio * kTwoPi * m_.f0 * t);
    }

    const Eigen::VectorXd &solve_outputs(const State &x, double t) {
        const double periods = t * m_.f0;
        Eigen::VectorXd charge(n_);
        for (int i = 0; i < n_; ++i) {
            const auto k = static_cast<size_t>(3 * i);
            charge(i) = x[k] + x[k + 1] + x[k + 2];
        }
        const double gated = std::min(periods, gate_periods_);
        if (!sync_active(m_, gated)) {
            for (int i = 0; i < n_; ++i) {
                u_(i) = solve_output(charge(i), p_, lim_, u_(i));
            }
            return u_;
        }
        const Eigen::MatrixXd w = coupling_at(m_, weights_, gated);
        const double shil = shil_volts(t);
        // Residual G(u) = u - sat(gain * (Q - sg * (W u + shil) - u)), solved by
        // damped Newton from the previous outputs.
        Eigen::VectorXd slope(n_);
        auto residual = [&](const Eigen::VectorXd &u, bool with_slope) {
            const Eigen::VectorXd arg =
                p_.gain * (charge - p_.sync_gain * (w * u + Eigen::VectorXd::Constant(n_, shil)) - u);
            Eigen::VectorXd r(n_);
            for (int i = 0; i < n_; ++i) {
                r(i) = u(i) - lim_.value(arg(i));
                if (with_slope) {
                    slope(i) = p_.gain * lim_.slope(arg(i));
                }
            }
            return r;
        };
        Eigen::VectorXd r = residual(u_, true);
        double norm = r.cwiseAbs().maxCoeff();
        for (int it = 0; it < 100; ++it) {
            if (norm <= 1e-13) {
                return u_;
            }
            Eigen::MatrixXd jac = slope.asDiagonal() * (p_.sync_gain * w);
            jac.diagonal() += Eigen::VectorXd::Ones(n_) + slope;
            const Eigen::VectorXd delta = jac.partialPivLu().solve(r);
            double step = 1.0;
            for (int back = 0; back < 40; ++back, step *= 0.5) {
                const Eigen::VectorXd trial = u_ - step * delta;
                const double nt = residual(trial, false).cwiseAbs().maxCoeff();
                if (nt < norm || back == 39) {
                    u_ = trial;
                    break;
                }
            }
            r = residual(u_, true);
            norm = r.cwiseAbs().maxCoeff();
        }
        std::ostringstream msg;
        msg << "amplifier outputs failed to converge at t=" << t << " s";
        throw SimulationError(msg.str());
    }

    void operator()(const State &x, State &dx, double t) {
        const Eigen::VectorXd &u = solve_outputs(x, t);
        for (int i = 0; i < n_; ++i) {
            const auto k = static_cast<size_t>(3 * i);
            ladder_rates(&x[k], u(i), rc_[static_cast<size_t>(i)], &dx[k]);
        }
    }

    std::vector<double> breakpoints_seconds() const {
        std::vector<double> out;
        if (!m_.sync_enabled) {
            return out;
        }
        out.push_back(m_.sync_since / m_.f0);
        if (m_.shil.ramp_periods > 0) {
            out.push_back((m_.sync_since + m_.shil.ramp_periods) / m_.f0);
        }
        for (Eigen::Index k = 0; k < m_.weight_delays.size(); ++k) {
            out.push_back((m_.sync_since + m_.weight_delays.data()[k]) / m_.f0);
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

  private:
    const MachineConfig &m_;
    OscParams p_;
    Limiter lim_;
    int n_;
    Eigen::MatrixXd weights_;
    double shil_full_;
    std::vector<double> rc_;
    Eigen::VectorXd u_;
    double gate_periods_ = std::numeric_limits<double>::infinity();
};

void check_finite(const State &x, double t) {
    for (double v : x) {
        if (!std::isfinite(v)) {
            std::ostringstream msg;
            msg << "circuit state diverged at t=" << t << " s";
            throw SimulationError(msg.str());
        }
    }
}

// Single oscillator with an optional sync input, kicked off the quiescent
// point by the caller. Returns the output sampled after every step.
template <typename Sync>
std::vector<double> drive_single(const OscParams &p, double f0, double periods, int steps_per_period,
                                 OscillatorState &state, double t0, Sync sync) {
    const double dt = 1.0 / (f0 * steps_per_period);
    const Limiter lim(p);
    Stepper stepper;
    State x(state.caps.begin(), state.caps.end());
    double u = state.u;
    auto output = [&](const State &q, double t) {
        return solve_output(q[0] + q[1] + q[2] - p.sync_gain * sync(t), p, lim, u);
    };
    auto rhs = [&](const State &q, State &dq, double t) {
        u = output(q, t);
        ladder_rates(q.data(), u, p.rc(), dq.data());
    };
    const auto steps = static_cast<long>(std::llround(periods * steps_per_period));
    std::vector<double> out;
    out.reserve(static_cast<size_t>(steps));
    for (long k = 0; k < steps; ++k) {
        const double t = t0 + static_cast<double>(k + 1) * dt;
        stepper.do_step(rhs, x, t - dt, dt);
        u = output(x, t);
        out.push_back(u);
    }
    check_finite(x, t0 + periods / f0);
    std::copy(x.begin(), x.end(), state.caps.begin());
    state.u = u;
    return out;
}

std::vector<double> free_run(const OscParams &p, double f0, double periods, int steps_per_period,
                             OscillatorState &state) {
    return drive_single(p, f0, periods, steps_per_period, state, 0.0, [](double) { return 0.0; });
}

} // namespace

void OscParams::validate() const {
    if (!(R > 0) || !(C > 0) || !(sat_level > 0)) {
        throw std::invalid_argument("R, C and saturation level must be positive");
    }
    if (!(gain > 29)) {
        throw std::invalid_argument("amplifier gain must exceed 29 for the three-stage ladder to oscillate");
    }
    if (!(asymmetry >= 0 && asymmetry < 1)) {
        throw std::invalid_argument("limiter asymmetry must be in [0, 1)");
    }
    if (!(sync_gain >= 0) || !(shil_volts_per_unit >= 0)) {
        throw std::invalid_argument("sync gain and SHIL scaling must be nonnegative");
    }
}

std::array<double, 3> OscillatorState::node_voltages() const {
    const double v1 = u - caps[0];
    const double v2 = v1 - caps[1];
    return {v1, v2, v2 - caps[2]};
}

std::vector<double> CircuitTrace::waveform(int osc) const {
    std::vector<double> out;
    out.reserve(outputs.size());
    for (const auto &row : outputs) {
        out.push_back(row.at(static_cast<size_t>(osc)));
    }
    return out;
}

double oscillator_output(const std::array<double, 3> &caps, double sync_in, const OscParams &p) {
    const Limiter lim(p);
    return solve_output(caps[0] + caps[1] + caps[2] - p.sync_gain * sync_in, p, lim, 0.0);
}

std::array<double, 3> oscillator_derivative(const OscillatorState &s, double sync_in, const OscParams &p,
                                            double rc_scale) {
    const double u = oscillator_output(s.caps, sync_in, p);
    std::array<double, 3> d{};
    ladder_rates(s.caps.data(), u, p.rc() * rc_scale, d.data());
    return d;
}

double analytic_frequency(const OscParams &p) { return 1.0 / (kTwoPi * p.rc() * std::sqrt(6.0)); }

CircuitTrace simulate_circuit(const MachineConfig &m, const OscParams &p, CircuitState &state, double duration_s,
                              double sample_rate, Rng &rng, const CircuitSimOptions &options) {
    m.validate();
    p.validate();
    if (!(duration_s > 0)) {
        throw std::invalid_argument("simulation duration must be positive");
    }
    if (!(sample_rate >= 2)) {
        throw std::invalid_argument("sample rate must be at least 2 samples per period");
    }
    if (static_cast<int>(state.osc.size()) != m.n) {
        throw std::invalid_argument("circuit state size differs from oscillator count");
    }

    Network net(m, p);
    net.seed_outputs(state.osc);
    State x(static_cast<size_t>(3 * m.n));
    for (int i = 0; i < m.n; ++i) {
        std::copy(state.osc[static_cast<size_t>(i)].caps.begin(), state.osc[static_cast<size_t>(i)].caps.end(),
                  x.begin() + 3 * i);
    }
    auto rhs = [&net](const State &q, State &dq, double t) { net(q, dq, t); };
    Stepper stepper;

    const double dt = 1.0 / (m.f0 * options.steps_per_period);
    const auto steps = static_cast<long>(std::llround(duration_s * m.f0 * options.steps_per_period));
    const long stride = std::max(1L, std::lround(options.steps_per_period / sample_rate));
    const std::vector<double> breaks = net.breakpoints_seconds();
    std::normal_distribution<double> normal(0.0, 1.0);
    const double noise = m.noise_sigma * p.sat_level * std::sqrt(dt * m.f0);

    CircuitTrace trace;
    trace.sample_interval = static_cast<double>(stride) * dt;
    if (m.sync_enabled) {
        trace.sync_on = std::max(m.sync_since / m.f0, state.t);
    }
    auto record = [&](double t) {
        const Eigen::VectorXd &u = net.solve_outputs(x, t);
        trace.times.push_back(t);
        trace.outputs.emplace_back(u.data(), u.data() + u.size());
    };
    record(state.t);

    for (long k = 0; k < steps; ++k) {
        const double t0 = state.t + static_cast<double>(k) * dt;
        const double t1 = state.t + static_cast<double>(k + 1) * dt;
        double t = t0;
        for (double b : breaks) {
            if (b > t && b < t1) {
                net.set_gate(t);
                stepper.do_step(rhs, x, t, b - t);
                t = b;
            }
        }
        net.set_gate(t);
        stepper.do_step(rhs, x, t, t1 - t);
        net.clear_gate();
        if (noise > 0) {
            for (int i = 0; i < m.n; ++i) {
                x[static_cast<size_t>(3 * i)] += noise * normal(rng);
            }
        }
        check_finite(x, t1);
        if ((k + 1) % stride == 0) {
            record(t1);
        }
    }

    const double t_end = state.t + static_cast<double>(steps) * dt;
    const Eigen::VectorXd &u = net.solve_outputs(x, t_end);
    for (int i = 0; i < m.n; ++i) {
        auto &o = state.osc[static_cast<size_t>(i)];
        std::copy(x.begin() + 3 * i, x.begin() + 3 * i + 3, o.caps.begin());
        o.u = u(i);
    }
    state.t = t_end;
    return trace;
}

double measure_frequency(std::span<const double> waveform, double dt) {
    if (waveform.size() < 3) {
        throw std::runtime_error("no oscillation detected: waveform too short");
    }
    double mean = 0;
    double lo = waveform[0];
    double hi = waveform[0];
    for (double v : waveform) {
        mean += v;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    mean /= static_cast<double>(waveform.size());
    if (hi - lo <= 1e-9 * std::max(1.0, std::abs(mean))) {
        throw std::runtime_error("no oscillation detected: waveform is flat");
    }
    std::vector<double> rising;
    int crossings = 0;
    for (size_t k = 0; k + 1 < waveform.size(); ++k) {
        const double a = waveform[k] - mean;
        const double b = waveform[k + 1] - mean;
        if ((a < 0) != (b < 0)) {
            ++crossings;
            if (a < 0) {
                rising.push_back((static_cast<double>(k) + a / (a - b)) * dt);
            }
        }
    }
    if (crossings < 20 || rising.size() < 2) {
        throw std::runtime_error("no oscillation detected: only " + std::to_string(crossings) +
                                 " zero crossings");
    }
    return static_cast<double>(rising.size() - 1) / (rising.back() - rising.front());
}

double measure_free_run_frequency(const CircuitTrace &trace, int osc) {
    const std::vector<double> w = trace.waveform(osc);
    const std::span<const double> tail(w.begin() + static_cast<long>(w.size() / 2), w.end());
    return measure_frequency(tail, trace.sample_interval);
}

double measure_peak_to_peak(const CircuitTrace &trace, int osc) {
    const std::vector<double> w = trace.waveform(osc);
    const auto [lo, hi] = std::minmax_element(w.begin() + static_cast<long>(w.size() / 2), w.end());
    return *hi - *lo;
}

double fundamental_phase(std::span<const double> waveform, double dt, double freq, double t0) {
    double c = 0;
    double s = 0;
    for (size_t k = 0; k < waveform.size(); ++k) {
        const double arg = kTwoPi * freq * (t0 + static_cast<double>(k) * dt);
        c += waveform[k] * std::cos(arg);
        s += waveform[k] * std::sin(arg);
    }
    // a cos(wt + phi) projects onto cos with a cos(phi) and onto sin with -a sin(phi).
    return std::atan2(-s, c);
}

OscParams calibrate(const OscParams &p, double target_hz, double target_vpp, double tolerance) {
    if (!(target_hz > 0) || !(target_vpp > 0)) {
        throw std::invalid_argument("calibration targets must be positive");
    }
    p.validate();
    OscParams q = p;
    // Start from the analytic resonance unless the parameters already sit near it.
    const double analytic_rc = 1.0 / (kTwoPi * target_hz * std::sqrt(6.0));
    if (std::abs(q.rc() / analytic_rc - 1) > 0.1) {
        q.C = analytic_rc / q.R;
    }
    constexpr int kSteps = 400;
    for (int iter = 0; iter < 12; ++iter) {
        OscillatorState s;
        s.caps[0] = 1e-3 * q.sat_level;
        free_run(q, target_hz, 150, kSteps, s);
        const std::vector<double> w = free_run(q, target_hz, 40, kSteps, s);
        const double dt = 1.0 / (target_hz * kSteps);
        const double f = measure_frequency(w, dt);
        const auto [lo, hi] = std::minmax_element(w.begin(), w.end());
        const double vpp = *hi - *lo;
        if (std::abs(f / target_hz - 1) <= tolerance && std::abs(vpp / target_vpp - 1) <= tolerance) {
            return q;
        }
        // Frequency scales as 1/RC; amplitude scales with the limiter levels.
        q.C *= f / target_hz;
        q.sat_level *= target_vpp / vpp;
    }
    throw std::runtime_error("oscillator calibration did not converge");
}

std::vector<OscillatorState> limit_cycle(const OscParams &p, double f0, int samples) {
    p.validate();
    if (samples < 2) {
        throw std::invalid_argument("limit cycle needs at least two samples");
    }
    OscillatorState s;
    s.caps[0] = 1e-3 * p.sat_level;
    free_run(p, f0, 150, 400, s);
    const std::vector<double> w = free_run(p, f0, 40, 400, s);
    const double period = 1.0 / measure_frequency(w, 1.0 / (f0 * 400));

    // Sample one true period of the orbit.
    std::vector<OscillatorState> out;
    out.reserve(static_cast<size_t>(samples));
    const Limiter lim(p);
    Stepper stepper;
    State x(s.caps.begin(), s.caps.end());
    double u = s.u;
    auto rhs = [&](const State &q, State &dq, double) {
        u = solve_output(q[0] + q[1] + q[2], p, lim, u);
        ladder_rates(q.data(), u, p.rc(), dq.data());
    };
    const double dt = period / samples;
    for (int k = 0; k < samples; ++k) {
        OscillatorState o;
        std::copy(x.begin(), x.end(), o.caps.begin());
        o.u = solve_output(x[0] + x[1] + x[2], p, lim, u);
        out.push_back(o);
        stepper.do_step(rhs, x, static_cast<double>(k) * dt, dt);
    }
    return out;
}

double shil_lock_phase(const OscParams &p, double f0, double shil_strength) {
    p.validate();
    if (!(shil_strength > 0)) {
        throw std::invalid_argument("SHIL strength must be positive");
    }
    constexpr int kSteps = 400;
    const double volts = p.shil_volts_per_unit * shil_strength;
    OscillatorState s;
    s.caps[0] = 1e-3 * p.sat_level;
    auto shil = [&](double t) { return volts * std::sin(2 * kTwoPi * f0 * t); };
    drive_single(p, f0, 150, kSteps, s, 0.0, shil);
    const double t0 = 150 / f0;
    const std::vector<double> w = drive_single(p, f0, 20, kSteps, s, t0, shil);
    const double dt = 1.0 / (f0 * kSteps);
    const double phase = fundamental_phase(w, dt, f0, t0 + dt);
    return std::remainder(phase, std::numbers::pi);
}

double sync_phase_response(const OscParams &p, double freq, double amplitude_v, double periods) {
    p.validate();
    if (!(freq > 0) || !(periods >= 20)) {
        throw std::invalid_argument("drive frequency must be positive and the run at least 20 periods long");
    }
    constexpr int kSteps = 400;
    OscillatorState s;
    s.caps[0] = 1e-3 * p.sat_level;
    auto drive = [&](double t) { return amplitude_v * std::cos(kTwoPi * freq * t); };
    const double settle = periods - 10;
    drive_single(p, freq, settle, kSteps, s, 0.0, drive);
    const double t0 = settle / freq;
    const std::vector<double> w = drive_single(p, freq, 10, kSteps, s, t0, drive);
    const double dt = 1.0 / (freq * kSteps);
    // The drive has phase zero by construction.
    return wrap_phase(fundamental_phase(w, dt, freq, t0 + dt));
}

PhaseTrace relative_phase_trace(const CircuitTrace &trace, double f0) {
    PhaseTrace out;
    if (trace.outputs.empty()) {
        return out;
    }
    const int n = static_cast<int>(trace.outputs.front().size());
    const auto window = static_cast<size_t>(std::lround(1.0 / (f0 * trace.sample_interval)));
    if (window < 2) {
        throw std::invalid_argument("trace is sampled too coarsely for phase extraction");
    }
    if (trace.sync_on) {
        out.sync_on = *trace.sync_on * f0;
    }
    std::vector<double> buf(window);
    for (size_t start = 0; start + window <= trace.size(); start += window) {
        std::vector<double> phases(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) {
            for (size_t k = 0; k < window; ++k) {
                buf[k] = trace.outputs[start + k][static_cast<size_t>(i)];
            }
            phases[static_cast<size_t>(i)] = fundamental_phase(buf, trace.sample_interval, f0, trace.times[start]);
        }
        const double ref = phases[0];
        for (auto &ph : phases) {
            ph = wrap_phase(ph - ref);
        }
        out.times.push_back(trace.times[start + window - 1] * f0);
        out.phases.push_back(std::move(phases));
    }
    return out;
}

} // namespace oscim
