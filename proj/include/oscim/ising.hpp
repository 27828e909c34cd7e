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

#ifndef OSCIM_ISING_HPP_
#define OSCIM_ISING_HPP_

#include <Eigen/Dense>
#include <vector>

#include "oscim/graph.hpp"

namespace oscim {

/// Ising Hamiltonian H = -sum_{i<j} J_ij s_i s_j - sum_i h_i s_i + offset.
///
/// Each interacting pair is counted once; J is kept symmetric with a zero
/// diagonal so that it reads as the negated weighted adjacency matrix of a
/// max-cut instance.
struct IsingProblem {
    int n = 0;
    Eigen::MatrixXd J;
    Eigen::VectorXd h;
    double offset = 0;

    explicit IsingProblem(int n = 0);
    IsingProblem(Eigen::MatrixXd couplings, Eigen::VectorXd fields, double offset = 0);

    /// Sets J_ij and J_ji together.
    void set_coupling(int i, int j, double value);
    void validate() const;
};

/// f(x) = sum_i Q_ii x_i + sum_{i<j} Q_ij x_i x_j + offset over x in {0,1}^n.
/// Only the upper triangle (diagonal included) is stored.
struct Qubo {
    int n = 0;
    Eigen::MatrixXd Q;
    double offset = 0;

    explicit Qubo(int n = 0);
    /// Accepts a full matrix; entries below the diagonal are folded into the
    /// upper triangle.
    Qubo(const Eigen::MatrixXd &matrix, double offset = 0);

    void validate() const;
};

/// J = -mu on every edge, h = 0, offset = 0.
IsingProblem graph_to_ising(const Graph &g);

double energy(const IsingProblem &p, const SpinConfig &s);

double qubo_value(const Qubo &q, const std::vector<int> &x);

/// Substitutes x_i = (1 + s_i) / 2, so that energy(result, s) equals
/// qubo_value(q, x(s)) for every s.
IsingProblem qubo_to_ising(const Qubo &q);

/// Inverse substitution s_i = 2 x_i - 1.
Qubo ising_to_qubo(const IsingProblem &p);

/// x_i = (1 + s_i) / 2.
std::vector<int> spins_to_binary(const SpinConfig &s);

} // namespace oscim

#endif // OSCIM_ISING_HPP_
