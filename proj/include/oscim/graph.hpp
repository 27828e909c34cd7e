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

#ifndef OSCIM_GRAPH_HPP_
#define OSCIM_GRAPH_HPP_

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace oscim {

/// An undirected weighted edge between 1-indexed vertices, stored with u < v.
struct Edge {
    int u = 0;
    int v = 0;
    double weight = 1.0;

    bool operator==(const Edge &) const = default;
};

/// Undirected edge-weighted graph: the max-cut instance.
///
/// Vertices are numbered 1..n as in the graph file format. Self-loops,
/// duplicate pairs and non-finite weights are rejected on insertion.
class Graph {
  public:
    explicit Graph(int n);
    Graph(int n, std::initializer_list<Edge> edges);
    Graph(int n, const std::vector<Edge> &edges);

    /// Inserts {u, v}; the endpoints may be given in either order.
    void add_edge(int u, int v, double weight = 1.0);

    int size() const { return n_; }
    const std::vector<Edge> &edges() const { return edges_; }
    bool has_edge(int u, int v) const;
    double total_weight() const;
    bool connected() const;

    bool operator==(const Graph &) const = default;

  private:
    int n_;
    std::vector<Edge> edges_;
};

Graph complete_graph(int n, double weight = 1.0);

/// One spin per vertex, each exactly -1 or +1. Index i is vertex i + 1.
class SpinConfig {
  public:
    SpinConfig() = default;
    explicit SpinConfig(std::vector<int8_t> spins);
    SpinConfig(std::initializer_list<int> spins);

    /// Bit i of `mask` set means spin i is -1.
    static SpinConfig from_mask(uint64_t mask, int n);
    /// '0' is +1 and '1' is -1, leftmost character is oscillator 1.
    static SpinConfig from_bitstring(const std::string &bits);

    int size() const { return static_cast<int>(spins_.size()); }
    int operator[](int i) const { return spins_[static_cast<size_t>(i)]; }
    const std::vector<int8_t> &values() const { return spins_; }

    SpinConfig flipped() const;
    /// Global flip applied when needed so that spin 0 is +1.
    SpinConfig normalized() const;
    std::string bitstring() const;

    auto operator<=>(const SpinConfig &) const = default;

  private:
    std::vector<int8_t> spins_;
};

enum class Side { A, B };

/// Vertex bipartition derived from a spin configuration (+1 -> A, -1 -> B).
struct Partition {
    std::vector<Side> side;

    static Partition from_spins(const SpinConfig &s);
    SpinConfig to_spins() const;
};

/// Sum of weights of edges whose endpoints carry opposite spins.
double cut_value(const Graph &g, const SpinConfig &s);

} // namespace oscim

#endif // OSCIM_GRAPH_HPP_
