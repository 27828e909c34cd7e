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


#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oscim/readout.hpp"

namespace oscim {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kF0 = 3800.0;
constexpr double kDt = 1.0 / (kF0 * 400);

std::vector<double> wave(double phase, int periods, double amplitude = 2.0) {
    std::vector<double> out;
    for (int k = 0; k < periods * 400; ++k) {
        out.push_back(amplitude * std::cos(2 * kPi * kF0 * k * kDt + phase));
    }
    return out;
}

PhaseTrace trace_of(const std::vector<std::vector<double>> &rows, double sync_on = 0) {
    PhaseTrace t;
    for (size_t k = 0; k < rows.size(); ++k) {
        t.times.push_back(static_cast<double>(k));
        t.phases.push_back(rows[k]);
    }
    t.sync_on = sync_on;
    return t;
}

TEST(PhaseDetector, SaturatesAtTheLimit) {
    const DetectorParams p;
    const auto ref = wave(0.3, 10);
    EXPECT_EQ(phase_detector(wave(0.3, 10), ref, kDt, 1 / kF0, p), p.limit);
    EXPECT_EQ(phase_detector(wave(0.3 + kPi, 10), ref, kDt, 1 / kF0, p), -p.limit);
}

TEST(PhaseDetector, SignFollowsRelativePhase) {
    const DetectorParams p;
    const auto ref = wave(0.0, 10);
    for (int deg = -180; deg <= 180; deg += 5) {
        if (std::abs(std::abs(deg) - 90) < 10) {
            continue;
        }
        const double phi = deg * kPi / 180;
        const double v = phase_detector(wave(phi, 10), ref, kDt, 1 / kF0, p);
        EXPECT_EQ(v > 0, std::cos(phi) > 0) << deg << " deg";
        EXPECT_LE(std::abs(v), p.limit);
    }
}

TEST(PhaseDetector, QuadratureIsNearZero) {
    DetectorParams p;
    p.integrator_rate = 200;
    const double v = phase_detector(wave(kPi / 2, 10), wave(0.0, 10), kDt, 1 / kF0, p);
    EXPECT_LT(std::abs(v), p.dead_zone);
}

TEST(PhaseDetector, Validation) {
    const DetectorParams p;
    const auto a = wave(0, 10);
    const auto b = wave(0, 3);
    EXPECT_THROW(phase_detector(a, b, kDt, 1 / kF0, p), std::invalid_argument);
    EXPECT_THROW(phase_detector(b, b, kDt, 1 / kF0, p), std::invalid_argument);
    DetectorParams bad;
    bad.dead_zone = bad.limit;
    EXPECT_THROW(phase_detector(a, a, kDt, 1 / kF0, bad), std::invalid_argument);
}

TEST(SpinsFromPhases, Examples) {
    const ReadoutResult r = spins_from_phases({{0.0, kPi, 0.1, -3.0}, 5.0});
    EXPECT_EQ(r.spins.bitstring(), "0101");
    EXPECT_EQ(r.unresolved_count(), 0);

    const ReadoutResult flipped = spins_from_phases({{kPi, 0.0, kPi + 0.1, 0.1}, 5.0});
    EXPECT_EQ(flipped.spins.bitstring(), "0101");

    const ReadoutResult loose = spins_from_phases({{0.0, kPi / 2 - 0.1, 0.4}, 0.0});
    EXPECT_EQ(loose.unresolved_count(), 2);
    EXPECT_FALSE(loose.resolved[1]);
    EXPECT_FALSE(loose.resolved[2]);
    EXPECT_EQ(loose.spins.bitstring(), "000");
    EXPECT_THROW(spins_from_phases({{}, 0.0}), std::invalid_argument);
}

TEST(SpinsFromPhases, InvariantUnderHalfTurn) {
    Rng rng(11);
    std::uniform_real_distribution<double> u(-kPi, kPi);
    for (int trial = 0; trial < 200; ++trial) {
        PhaseState s{std::vector<double>(6), 0.0};
        for (auto &th : s.theta) {
            th = u(rng);
        }
        PhaseState shifted = s;
        for (auto &th : shifted.theta) {
            th += kPi;
        }
        const ReadoutResult a = spins_from_phases(s);
        const ReadoutResult b = spins_from_phases(shifted);
        EXPECT_EQ(a.spins, b.spins);
        EXPECT_EQ(a.resolved, b.resolved);
        EXPECT_EQ(a.spins[0], 1);
    }
}

TEST(SpinsFromDetectors, DeadZone) {
    const std::vector<double> v{4.9, -5.0, 0.2, -0.6};
    const ReadoutResult r = spins_from_detectors(v, 0.5);
    EXPECT_EQ(r.spins.bitstring(), "00101");
    EXPECT_EQ(r.resolved, (std::vector<bool>{true, true, true, false, true}));
    EXPECT_EQ(r.unresolved_count(), 1);
    EXPECT_EQ(r.detector_values, v);
}

TEST(BinarizationError, Examples) {
    EXPECT_DOUBLE_EQ(binarization_error(0.0), 0.0);
    EXPECT_NEAR(binarization_error(kPi), 0.0, 1e-15);
    EXPECT_NEAR(binarization_error(0.2), 0.2, 1e-15);
    EXPECT_NEAR(binarization_error(kPi - 0.2), 0.2, 1e-15);
    EXPECT_NEAR(binarization_error(-kPi + 0.2), 0.2, 1e-15);
    EXPECT_NEAR(binarization_error(2 * kPi + 0.3), 0.3, 1e-12);
    EXPECT_NEAR(binarization_error(kPi / 2), kPi / 2, 1e-15);
}

TEST(LockPeriod, Examples) {
    const std::vector<double> bad{0.0, 1.0};
    const std::vector<double> good{0.0, kPi - 0.01};
    EXPECT_EQ(lock_period(trace_of({bad, bad, good, good, good, good})), 2.0);
    EXPECT_EQ(lock_period(trace_of({good, good, good})), 0.0);
    // Broken holds restart the count.
    EXPECT_EQ(lock_period(trace_of({good, bad, good, good, bad, good, good, good})), 5.0);
    EXPECT_EQ(lock_period(trace_of({good, good, bad, good})), std::nullopt);
    EXPECT_EQ(lock_period(trace_of({bad, bad})), std::nullopt);
}

TEST(LockPeriod, CountsFromSyncOn) {
    const std::vector<double> good{0.0, kPi};
    const std::vector<double> bad{0.0, 1.0};
    // Samples before sync-on are ignored even when binarized.
    EXPECT_EQ(lock_period(trace_of({good, good, good, bad, good, good, good}, 2.5)), 1.5);
    EXPECT_EQ(lock_period(trace_of({good, good, good, good}, 1.0)), 0.0);
}

TEST(LockPeriod, ToleranceAndHold) {
    const std::vector<double> near{0.0, kPi - 0.2};
    EXPECT_EQ(lock_period(trace_of({near, near, near})), 0.0);
    EXPECT_EQ(lock_period(trace_of({near, near, near}), 0.1), std::nullopt);
    EXPECT_EQ(lock_period(trace_of({near, near, near}), 0.3, 3.0), std::nullopt);
    PhaseTrace no_sync = trace_of({near});
    no_sync.sync_on.reset();
    EXPECT_THROW(lock_period(no_sync), std::invalid_argument);
}

} // namespace
} // namespace oscim
