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

#include <filesystem>
#include <sstream>

#include "oscim/io.hpp"
#include "test_support.hpp"

namespace oscim {
namespace {

std::string error_of(const std::string &text) {
    try {
        parse_graph(text);
    } catch (const std::invalid_argument &e) {
        return e.what();
    }
    return "";
}

int line_count(const std::string &s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

TEST(ParseGraph, Basic) {
    const Graph g = parse_graph("# triangle\n\nn 3\n1 2 1\n2 3 0.5  \n\t1 3 -2\n");
    EXPECT_EQ(g.size(), 3);
    ASSERT_EQ(g.edges().size(), 3U);
    EXPECT_EQ(g.edges()[1].weight, 0.5);
    EXPECT_EQ(g.edges()[2].weight, -2.0);
    EXPECT_EQ(parse_graph("n 4\n").edges().size(), 0U);
}

TEST(ParseGraph, ErrorsCarryLineNumbers) {
    EXPECT_EQ(error_of(""), "graph file has no 'n <count>' header");
    EXPECT_EQ(error_of("# only a comment\n1 2 1\n"), "line 2: expected header 'n <count>'");
    EXPECT_EQ(error_of("n 0\n"), "line 1: vertex count must be positive");
    EXPECT_EQ(error_of("n 3\n1 2\n"), "line 2: expected edge 'u v w'");
    EXPECT_EQ(error_of("n 3\n1 2 x\n"), "line 2: expected edge 'u v w'");
    EXPECT_EQ(error_of("n 3\n1 2 1 7\n"), "line 2: expected edge 'u v w'");
    EXPECT_EQ(error_of("n 3\n\n1 1 1\n"), "line 3: self-loop on vertex 1");
    EXPECT_NE(error_of("n 3\n1 4 1\n").find("line 2: vertex out of range"), std::string::npos);
    EXPECT_NE(error_of("n 3\n1 2 1\n2 1 1\n").find("line 3: duplicate edge"), std::string::npos);
    EXPECT_NE(error_of("n 3\n1 2 nan\n").find("line 2:"), std::string::npos);
}

TEST(ParseGraph, FormatRoundTrip) {
    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const Graph g = testing::random_real_graph(1 + trial % 9, 0.5, rng);
        EXPECT_EQ(parse_graph(format_graph(g)), g);
    }
}

TEST(TextFiles, RoundTripAndErrors) {
    const auto path = (std::filesystem::temp_directory_path() / "oscim_io_roundtrip.txt").string();
    write_text_file(path, "abc\n0 1\n");
    EXPECT_EQ(read_text_file(path), "abc\n0 1\n");
    std::filesystem::remove(path);
    EXPECT_THROW(read_text_file(path), std::invalid_argument);
    EXPECT_THROW(write_text_file("/nonexistent-dir/x.txt", "x"), std::invalid_argument);
}

TEST(ProblemJson, QuboRoundTrip) {
    Eigen::MatrixXd m(3, 3);
    m << 1, -2, 0.25, 0, 3, 0.5, 0, 0, -1;
    const Qubo q(m, 1.5);
    const nlohmann::json doc = qubo_to_json(q);
    EXPECT_EQ(doc["type"], "qubo");
    const Qubo back = qubo_from_json(nlohmann::json::parse(doc.dump()));
    EXPECT_EQ(back.Q, q.Q);
    EXPECT_EQ(back.offset, 1.5);
}

TEST(ProblemJson, IsingRoundTrip) {
    IsingProblem p = graph_to_ising(testing::triangle());
    p.h << 0.5, -1, 0;
    p.offset = -0.25;
    const IsingProblem back = ising_from_json(nlohmann::json::parse(ising_to_json(p).dump()));
    EXPECT_EQ(back.J, p.J);
    EXPECT_EQ(back.h, p.h);
    EXPECT_EQ(back.offset, p.offset);
}

TEST(ProblemJson, Validation) {
    using nlohmann::json;
    EXPECT_THROW(qubo_from_json(json::parse(R"({"n": 2, "Q": [[1, 0]]})")), std::invalid_argument);
    EXPECT_THROW(qubo_from_json(json::parse(R"({"n": 1})")), std::invalid_argument);
    EXPECT_THROW(qubo_from_json(json::parse(R"({"n": 1, "Q": [["a"]]})")), std::invalid_argument);
    EXPECT_THROW(qubo_from_json(json::parse(R"({"type": "ising", "n": 1, "Q": [[1]]})")), std::invalid_argument);
    EXPECT_THROW(ising_from_json(json::parse(R"({"n": -1, "J": []})")), std::invalid_argument);
    EXPECT_THROW(ising_from_json(json::parse(R"({"n": 2, "J": [[0, 1], [1, 0]], "h": [1]})")),
                 std::invalid_argument);
    EXPECT_THROW(ising_from_json(json::parse(R"({"n": 1, "J": [[0]], "offset": "x"})")), std::invalid_argument);
    const IsingProblem p = ising_from_json(json::parse(R"({"n": 2, "J": [[0, 1], [1, 0]]})"));
    EXPECT_EQ(p.h, Eigen::VectorXd::Zero(2));
    EXPECT_EQ(p.offset, 0.0);
}

TEST(ResultDocument, Fields) {
    const Instance inst(testing::triangle());
    const MachineConfig m = make_machine(inst.graph, {.n = 3});
    RunSchedule sched;
    sched.settle_periods = 60;
    const RunStats stats = run_many(inst, m, {}, sched, 4, 7, 1);
    const nlohmann::json doc = result_document(inst, m, {}, sched, stats, 4, 7);
    EXPECT_EQ(doc["instance"]["n"], 3);
    EXPECT_EQ(doc["instance"]["edges"].size(), 3U);
    EXPECT_EQ(doc["oracle"]["optimum"], 2.0);
    EXPECT_EQ(doc["oracle"]["optimal_bitstrings"], (std::vector<std::string>{"001", "010", "011"}));
    EXPECT_EQ(doc["results"]["runs"], 4);
    EXPECT_EQ(doc["config"]["seed"], 7);
    EXPECT_EQ(doc["config"]["backend"]["kind"], "phase");
    EXPECT_EQ(doc["config"]["machine"]["coupling"]["codes"][0][1], 1023);
    EXPECT_TRUE(doc["results"]["median_lock_period"].is_number());
    EXPECT_TRUE(stats_to_json(RunStats{})["median_lock_period"].is_null());

    BackendConfig circuit;
    circuit.kind = BackendKind::Circuit;
    EXPECT_TRUE(backend_to_json(circuit).contains("circuit"));
    EXPECT_FALSE(backend_to_json(circuit).contains("phase"));
}

TEST(Csv, TraceLayout) {
    const Instance inst(testing::single_edge());
    RunTrace tr;
    run_once(inst, make_machine(inst.graph, {.n = 2}), {}, {}, 1, &tr);
    const std::string csv = trace_csv(tr);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "t_periods,osc1,osc2,sync");
    EXPECT_EQ(line_count(csv), 1 + 601);
    std::istringstream in(csv);
    std::string header;
    std::string first;
    std::getline(in, header);
    std::getline(in, first);
    EXPECT_EQ(first.substr(0, 2), "5,");
    EXPECT_EQ(first.back(), '1');
}

TEST(Csv, SweepLayout) {
    std::vector<SweepRow> rows(2);
    rows[0].scale = 0.1;
    rows[0].stats.success_rate = 0.5;
    rows[0].stats.mean_lock_period = 7.25;
    rows[1].scale = 0.2;
    rows[1].stats.success_rate = 1;
    EXPECT_EQ(sweep_csv(rows), "scale,success_rate,mean_lock_period\n0.1,0.5,7.25\n0.2,1,\n");
}

} // namespace
} // namespace oscim
