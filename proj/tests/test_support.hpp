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

// Independent reference implementations used to check the library.

#ifndef OSCIM_TESTS_TEST_SUPPORT_HPP_
#define OSCIM_TESTS_TEST_SUPPORT_HPP_

#include <cstdint>
#include <random>
#include <vector>

#include "oscim/graph.hpp"

namespace oscim::testing {

/// Spin i of assignment `mask` straight from the bit, +1 when clear.
inline int spin_of(uint64_t mask, int i) { return ((mask >> i) & 1U) != 0 ? -1 : 1; }

/// Cut weight recomputed edge by edge from a mask.
inline double naive_cut(const Graph &g, uint64_t mask) {
    double c = 0;
    for (const Edge &e : g.edges()) {
        if (spin_of(mask, e.u - 1) != spin_of(mask, e.v - 1)) {
            c += e.weight;
        }
    }
    return c;
}

/// G(n, p) with integer weights in [1, max_weight] (1 gives an unweighted graph).
inline Graph random_graph(int n, double p, std::mt19937_64 &rng, int max_weight = 1) {
    Graph g(n);
    std::bernoulli_distribution edge(p);
    std::uniform_int_distribution<int> weight(1, max_weight);
    for (int u = 1; u <= n; ++u) {
        for (int v = u + 1; v <= n; ++v) {
            if (edge(rng)) {
                g.add_edge(u, v, weight(rng));
            }
        }
    }
    return g;
}

/// Same with real weights in [-1, 2] so signs and ties are exercised.
inline Graph random_real_graph(int n, double p, std::mt19937_64 &rng) {
    Graph g(n);
    std::bernoulli_distribution edge(p);
    std::uniform_real_distribution<double> weight(-1.0, 2.0);
    for (int u = 1; u <= n; ++u) {
        for (int v = u + 1; v <= n; ++v) {
            if (edge(rng)) {
                g.add_edge(u, v, weight(rng));
            }
        }
    }
    return g;
}

inline Graph triangle() { return Graph(3, {{1, 2, 1.0}, {2, 3, 1.0}, {1, 3, 1.0}}); }
inline Graph single_edge() { return Graph(2, {{1, 2, 1.0}}); }

} // namespace oscim::testing

#endif // OSCIM_TESTS_TEST_SUPPORT_HPP_
