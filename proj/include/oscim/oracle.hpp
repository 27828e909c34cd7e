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

#ifndef OSCIM_ORACLE_HPP_
#define OSCIM_ORACLE_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "oscim/graph.hpp"
#include "oscim/ising.hpp"

namespace oscim {

/// Largest instance the exhaustive oracles accept (2^24 configurations).
inline constexpr int kMaxOracleSpins = 24;

/// Optimum value and every configuration attaining it.
///
/// Configurations are kept as sorted spin masks (bit i set means spin i is -1)
/// so that degenerate instances such as an edgeless graph stay cheap.
struct OracleResult {
    int n = 0;
    double optimum = 0;
    std::vector<uint64_t> masks;

    size_t count() const { return masks.size(); }
    bool contains(const SpinConfig &s) const;
    std::vector<SpinConfig> configs() const;
    /// Distinct reference-normalized bitstrings (spin 0 fixed to +1), sorted.
    std::vector<std::string> normalized_bitstrings() const;
};

/// Maximum cut by exhaustive enumeration; result set is closed under global flip.
OracleResult brute_force_max_cut(const Graph &g);

/// Minimum Ising energy and all ground states by exhaustive enumeration.
OracleResult brute_force_ground_states(const IsingProblem &p);

/// Tolerance used to group floating-point ties among optimal configurations.
double oracle_tie_tolerance(double magnitude);

} // namespace oscim

#endif // OSCIM_ORACLE_HPP_
