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

#include "oscim/graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace oscim {

Graph::Graph(int n) : n_(n) {
    if (n < 1) {
        throw std::invalid_argument("graph needs at least one vertex, got n=" + std::to_string(n));
    }
}

Graph::Graph(int n, std::initializer_list<Edge> edges) : Graph(n) {
    for (const auto &e : edges) {
        add_edge(e.u, e.v, e.weight);
    }
}

Graph::Graph(int n, const std::vector<Edge> &edges) : Graph(n) {
    for (const auto &e : edges) {
        add_edge(e.u, e.v, e.weight);
    }
}

void Graph::add_edge(int u, int v, double weight) {
    if (u < 1 || u > n_ || v < 1 || v > n_) {
        throw std::invalid_argument("vertex out of range: edge (" + std::to_string(u) + ", " +
                                    std::to_string(v) + ") with n=" + std::to_string(n_));
    }
    if (u == v) {
        throw std::invalid_argument("self-loop on vertex " + std::to_string(u));
    }
    if (!std::isfinite(weight)) {
        throw std::invalid_argument("non-finite edge weight");
    }
    if (u > v) {
        std::swap(u, v);
    }
    if (has_edge(u, v)) {
        throw std::invalid_argument("duplicate edge (" + std::to_string(u) + ", " + std::to_string(v) +
                                    ")");
    }
    edges_.push_back({u, v, weight});
}

bool Graph::has_edge(int u, int v) const {
    if (u > v) {
        std::swap(u, v);
    }
    return std::any_of(edges_.begin(), edges_.end(), [&](const Edge &e) { return e.u == u && e.v == v; });
}

double Graph::total_weight() const {
    double sum = 0;
    for (const auto &e : edges_) {
        sum += e.weight;
    }
    return sum;
}

bool Graph::connected() const {
    std::vector<int> parent(static_cast<size_t>(n_) + 1);
    for (int i = 0; i <= n_; ++i) {
        parent[static_cast<size_t>(i)] = i;
    }
    auto find = [&](int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            x = parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
        }
        return x;
    };
    int components = n_;
    for (const auto &e : edges_) {
        int a = find(e.u);
        int b = find(e.v);
        if (a != b) {
            parent[static_cast<size_t>(a)] = b;
            --components;
        }
    }
    return components == 1;
}

Graph complete_graph(int n, double weight) {
    Graph g(n);
    for (int u = 1; u <= n; ++u) {
        for (int v = u + 1; v <= n; ++v) {
            g.add_edge(u, v, weight);
        }
    }
    return g;
}

SpinConfig::SpinConfig(std::vector<int8_t> spins) : spins_(std::move(spins)) {
    for (auto s : spins_) {
        if (s != 1 && s != -1) {
            throw std::invalid_argument("spin values must be -1 or +1");
        }
    }
}

SpinConfig::SpinConfig(std::initializer_list<int> spins) {
    spins_.reserve(spins.size());
    for (int s : spins) {
        if (s != 1 && s != -1) {
            throw std::invalid_argument("spin values must be -1 or +1");
        }
        spins_.push_back(static_cast<int8_t>(s));
    }
}

SpinConfig SpinConfig::from_mask(uint64_t mask, int n) {
    std::vector<int8_t> s(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        s[static_cast<size_t>(i)] = ((mask >> i) & 1U) ? -1 : 1;
    }
    return SpinConfig(std::move(s));
}

SpinConfig SpinConfig::from_bitstring(const std::string &bits) {
    std::vector<int8_t> s;
    s.reserve(bits.size());
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw std::invalid_argument("bitstring may only contain '0' and '1'");
        }
        s.push_back(c == '0' ? 1 : -1);
    }
    return SpinConfig(std::move(s));
}

SpinConfig SpinConfig::flipped() const {
    SpinConfig out = *this;
    for (auto &s : out.spins_) {
        s = static_cast<int8_t>(-s);
    }
    return out;
}

SpinConfig SpinConfig::normalized() const {
    if (!spins_.empty() && spins_.front() == -1) {
        return flipped();
    }
    return *this;
}

std::string SpinConfig::bitstring() const {
    std::string out;
    out.reserve(spins_.size());
    for (auto s : spins_) {
        out.push_back(s == 1 ? '0' : '1');
    }
    return out;
}

Partition Partition::from_spins(const SpinConfig &s) {
    Partition p;
    p.side.reserve(static_cast<size_t>(s.size()));
    for (auto v : s.values()) {
        p.side.push_back(v == 1 ? Side::A : Side::B);
    }
    return p;
}

SpinConfig Partition::to_spins() const {
    std::vector<int8_t> s;
    s.reserve(side.size());
    for (auto x : side) {
        s.push_back(x == Side::A ? 1 : -1);
    }
    return SpinConfig(std::move(s));
}

double cut_value(const Graph &g, const SpinConfig &s) {
    if (s.size() != g.size()) {
        throw std::invalid_argument("spin config has " + std::to_string(s.size()) +
                                    " entries, graph has " + std::to_string(g.size()) + " vertices");
    }
    double cut = 0;
    for (const auto &e : g.edges()) {
        if (s[e.u - 1] != s[e.v - 1]) {
            cut += e.weight;
        }
    }
    return cut;
}

} // namespace oscim
