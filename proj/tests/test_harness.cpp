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

#include <numeric>

#include "oscim/harness.hpp"
#include "test_support.hpp"

namespace oscim {
namespace {

int histogram_total(const RunStats &s) {
    return std::accumulate(s.histogram.begin(), s.histogram.end(), 0,
                           [](int acc, const auto &kv) { return acc + kv.second; });
}

TEST(Backend, Names) {
    EXPECT_EQ(parse_backend("phase"), BackendKind::Phase);
    EXPECT_EQ(parse_backend("circuit"), BackendKind::Circuit);
    EXPECT_STREQ(backend_name(BackendKind::Circuit), "circuit");
    EXPECT_THROW(parse_backend("spice"), std::invalid_argument);
}

TEST(RunOnce, SingleEdgeLocksAntiphase) {
    const Instance inst(testing::single_edge());
    const MachineConfig m = make_machine(inst.graph);
    for (uint64_t seed = 0; seed < 20; ++seed) {
        const RunResult r = run_once(inst, m, {}, {}, seed);
        EXPECT_EQ(r.bitstring, "01");
        EXPECT_TRUE(r.optimal);
        EXPECT_EQ(r.cut, 1.0);
        EXPECT_TRUE(r.lock_period);
        EXPECT_LE(r.max_phase_error, kDefaultPhaseTolerance);
    }
}

TEST(RunOnce, DeterministicPerSeed) {
    const Instance inst(testing::triangle());
    const MachineConfig m = make_machine(inst.graph);
    for (uint64_t seed = 0; seed < 5; ++seed) {
        EXPECT_EQ(run_once(inst, m, {}, {}, seed), run_once(inst, m, {}, {}, seed));
    }
}

TEST(RunOnce, TraceCoversSettleWindow) {
    const Instance inst(testing::triangle());
    const MachineConfig m = make_machine(inst.graph);
    RunTrace tr;
    run_once(inst, m, {}, {}, 3, &tr);
    ASSERT_EQ(tr.t_periods.size(), 601U);
    EXPECT_DOUBLE_EQ(tr.t_periods.front(), 5.0);
    EXPECT_DOUBLE_EQ(tr.t_periods.back(), 35.0);
    EXPECT_EQ(tr.values.front().size(), 8U);
    EXPECT_EQ(tr.sync.size(), tr.t_periods.size());
    EXPECT_TRUE(tr.sync.front());
}

TEST(RunOnce, Validation) {
    const Instance inst(complete_graph(4));
    const MachineConfig small = make_machine(testing::triangle(), {.n = 3});
    EXPECT_THROW(run_once(inst, small, {}, {}, 1), std::invalid_argument);
    RunSchedule bad;
    bad.settle_periods = 0;
    EXPECT_THROW(run_once(Instance(testing::triangle()), small, {}, bad, 1), std::invalid_argument);
    EXPECT_THROW(run_many(Instance(testing::triangle()), small, {}, {}, 0, 1), std::invalid_argument);
}

TEST(RunMany, TriangleMostlyOptimal) {
    const Instance inst(testing::triangle());
    const RunStats s = run_many(inst, make_machine(inst.graph), {}, {}, 100, 42, 1);
    EXPECT_GE(s.success_rate, 0.9);
    EXPECT_EQ(s.runs, 100);
    EXPECT_EQ(histogram_total(s), 100);
    int optimal = 0;
    for (const auto &[bits, count] : s.optimum_frequencies) {
        EXPECT_TRUE(inst.oracle.contains(SpinConfig::from_bitstring(bits)));
        optimal += count;
    }
    EXPECT_EQ(optimal, s.successes);
    EXPECT_EQ(s.optimum_frequencies.size(), 3U);
}

TEST(RunMany, EmptyGraphIsTriviallyOptimal) {
    const Instance inst(Graph(3));
    // Without coupling only the injection binarizes, which takes longer than
    // the default settle window at the floor strength.
    RunSchedule sched;
    sched.settle_periods = 60;
    const RunStats s = run_many(inst, make_machine(inst.graph), {}, sched, 20, 5, 1);
    EXPECT_EQ(histogram_total(s), 20);
    EXPECT_EQ(s.successes, 20);
}

TEST(RunMany, IndependentOfThreadCount) {
    const Instance inst(complete_graph(5));
    const MachineConfig m = make_machine(inst.graph);
    const RunStats one = run_many(inst, m, {}, {}, 24, 9, 1);
    EXPECT_EQ(one, run_many(inst, m, {}, {}, 24, 9, 4));
    EXPECT_EQ(one, run_many(inst, m, {}, {}, 24, 9, 0));
    EXPECT_NE(one, run_many(inst, m, {}, {}, 24, 10, 1));
}

TEST(RunMany, UncoupledMachineIsARandomGuess) {
    // K4 has 6 maximum cuts among 16 spin configurations.
    const Instance inst(complete_graph(4));
    MachineOptions o{.n = 4, .global_scale = 0.0};
    o.shil.ramp_periods = 0;
    const RunStats s = run_many(inst, make_machine(inst.graph, o), {}, {}, 400, 3, 1);
    EXPECT_EQ(s.unresolved_runs, 0);
    EXPECT_NEAR(s.success_rate, 6.0 / 16.0, 0.08);
}

TEST(Aggregate, Statistics) {
    const Instance inst(testing::triangle());
    std::vector<RunResult> rs(4);
    rs[0] = {"001", 2, true, 4.0, 0, 0.01};
    rs[1] = {"011", 2, true, 6.0, 0, 0.02};
    rs[2] = {"000", 0, false, std::nullopt, 2, 1.2};
    rs[3] = {"001", 2, true, 9.0, 0, 0.05};
    const RunStats s = aggregate(inst, rs);
    EXPECT_EQ(s.runs, 4);
    EXPECT_EQ(s.successes, 3);
    EXPECT_DOUBLE_EQ(s.success_rate, 0.75);
    EXPECT_EQ(s.locked_runs, 3);
    EXPECT_DOUBLE_EQ(*s.mean_lock_period, 19.0 / 3);
    EXPECT_DOUBLE_EQ(*s.median_lock_period, 6.0);
    EXPECT_EQ(s.unresolved_runs, 1);
    EXPECT_DOUBLE_EQ(s.unresolved_rate, 0.25);
    EXPECT_DOUBLE_EQ(s.max_phase_error_locked, 0.05);
    EXPECT_EQ(s.histogram, (std::map<std::string, int>{{"000", 1}, {"001", 2}, {"011", 1}}));
    EXPECT_EQ(s.optimum_frequencies, (std::map<std::string, int>{{"001", 2}, {"010", 0}, {"011", 1}}));

    const RunStats none = aggregate(inst, {rs[2]});
    EXPECT_FALSE(none.median_lock_period);
    EXPECT_FALSE(none.mean_lock_period);
}

TEST(Sweep, OneRowPerScale) {
    const Instance inst(testing::triangle());
    const auto rows = sweep_coupling(inst, make_machine(inst.graph), {}, {}, {0.1, 0.3}, 10, 1, 1);
    ASSERT_EQ(rows.size(), 2U);
    EXPECT_EQ(rows[0].scale, 0.1);
    EXPECT_EQ(rows[1].stats.runs, 10);
    EXPECT_THROW(sweep_coupling(inst, make_machine(inst.graph), {}, {}, {}, 10, 1), std::invalid_argument);
    const auto scales = default_sweep_scales();
    ASSERT_EQ(scales.size(), 10U);
    EXPECT_DOUBLE_EQ(scales.front(), 0.05);
    EXPECT_DOUBLE_EQ(scales.back(), 0.5);
}

TEST(Stagger, ZeroDelaysMatchSimultaneousActivation) {
    const Instance inst(complete_graph(4));
    const MachineConfig m = make_machine(inst.graph);
    const StaggerReport r =
        staggered_activation_experiment(inst, m, {}, {}, Eigen::MatrixXd::Zero(8, 8), 20, 4, 1);
    EXPECT_EQ(r.simultaneous, r.staggered);
    EXPECT_THROW(staggered_activation_experiment(inst, m, {}, {}, Eigen::MatrixXd::Zero(3, 3), 2, 4, 1),
                 std::invalid_argument);
}

TEST(Stagger, EdgeDelays) {
    const Eigen::MatrixXd d = edge_delays(testing::triangle(), 4, 2.0);
    EXPECT_EQ(d.rows(), 4);
    const Graph tri = testing::triangle();
    const auto &edges = tri.edges();
    for (size_t k = 0; k < edges.size(); ++k) {
        EXPECT_EQ(d(edges[k].u - 1, edges[k].v - 1), 2.0 * static_cast<double>(k));
        EXPECT_EQ(d(edges[k].v - 1, edges[k].u - 1), 2.0 * static_cast<double>(k));
    }
    EXPECT_EQ(d.col(3).sum() + d.row(3).sum(), 0.0);
    EXPECT_THROW(edge_delays(complete_graph(5), 4, 1.0), std::invalid_argument);

    const Instance inst(testing::triangle());
    const StaggerReport r = staggered_activation_experiment(inst, make_machine(inst.graph), {}, {},
                                                            edge_delays(inst.graph, 8, 3.0), 20, 4, 1);
    EXPECT_EQ(r.staggered.runs, 20);
    EXPECT_GE(r.staggered.success_rate, 0.8);
}

TEST(CircuitBackend, SingleEdgeLocksAntiphase) {
    const Instance inst(testing::single_edge());
    const MachineConfig m = make_machine(inst.graph, {.n = 2});
    BackendConfig b;
    b.kind = BackendKind::Circuit;
    for (uint64_t seed = 0; seed < 5; ++seed) {
        const RunResult r = run_once(inst, m, b, {}, seed);
        EXPECT_EQ(r.bitstring, "01") << "seed " << seed;
        EXPECT_TRUE(r.optimal) << "seed " << seed;
    }
}

} // namespace
} // namespace oscim
