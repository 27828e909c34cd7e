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

#ifndef OSCIM_IO_HPP_
#define OSCIM_IO_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "oscim/harness.hpp"
#include "oscim/ising.hpp"

namespace oscim {

/// Graph text format:
///
///   # comment
///   n 3
///   1 2 1.0
///   2 3 0.5
///
/// Vertices are 1-indexed. Blank lines are ignored. Errors name the line.
Graph parse_graph(const std::string &text);
std::string format_graph(const Graph &g);

std::string read_text_file(const std::string &path);
void write_text_file(const std::string &path, const std::string &text);

nlohmann::json qubo_to_json(const Qubo &q);
Qubo qubo_from_json(const nlohmann::json &doc);
nlohmann::json ising_to_json(const IsingProblem &p);
IsingProblem ising_from_json(const nlohmann::json &doc);

nlohmann::json machine_to_json(const MachineConfig &m);
nlohmann::json backend_to_json(const BackendConfig &b);
nlohmann::json schedule_to_json(const RunSchedule &s);
nlohmann::json stats_to_json(const RunStats &s);

/// Complete record of a multi-run experiment: instance, oracle, statistics and
/// every parameter needed to reproduce it.
nlohmann::json result_document(const Instance &inst, const MachineConfig &m, const BackendConfig &b,
                               const RunSchedule &sched, const RunStats &stats, int runs, uint64_t seed);

/// CSV with header t_periods,osc1,...,oscN,sync.
std::string trace_csv(const RunTrace &trace);

/// CSV with header scale,success_rate,mean_lock_period; an empty cell marks a
/// point where no run locked.
std::string sweep_csv(const std::vector<SweepRow> &rows);

} // namespace oscim

#endif // OSCIM_IO_HPP_
