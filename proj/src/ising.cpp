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

#include "oscim/ising.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace oscim {

IsingProblem::IsingProblem(int n) : n(n), J(Eigen::MatrixXd::Zero(n, n)), h(Eigen::VectorXd::Zero(n)) {
    if (n < 0) {
        throw std::invalid_argument("negative spin count");
    }
}

IsingProblem::IsingProblem(Eigen::MatrixXd couplings, Eigen::VectorXd fields, double offset)
    : n(static_cast<int>(couplings.rows())), J(std::move(couplings)), h(std::move(fields)), offset(offset) {
    validate();
}

void IsingProblem::set_coupling(int i, int j, double value) {
    if (i == j) {
        throw std::invalid_argument("self-coupling J_ii is not allowed");
    }
    J(i, j) = value;
    J(j, i) = value;
}

void IsingProblem::validate() const {
    if (J.rows() != n || J.cols() != n || h.size() != n) {
        throw std::invalid_argument("Ising problem dimensions disagree with n=" + std::to_string(n));
    }
    if (!J.allFinite() || !h.allFinite() || !std::isfinite(offset)) {
        throw std::invalid_argument("Ising problem has non-finite entries");
    }
    for (int i = 0; i < n; ++i) {
        if (J(i, i) != 0.0) {
            throw std::invalid_argument("J must have a zero diagonal");
        }
        for (int j = i + 1; j < n; ++j) {
            if (J(i, j) != J(j, i)) {
                throw std::invalid_argument("J must be symmetric");
            }
        }
    }
}

Qubo::Qubo(int n) : n(n), Q(Eigen::MatrixXd::Zero(n, n)) {
    if (n < 0) {
        throw std::invalid_argument("negative variable count");
    }
}

Qubo::Qubo(const Eigen::MatrixXd &matrix, double offset) : Qubo(static_cast<int>(matrix.rows())) {
    if (matrix.cols() != matrix.rows()) {
        throw std::invalid_argument("QUBO matrix must be square");
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            Q(std::min(i, j), std::max(i, j)) += matrix(i, j);
        }
    }
    this->offset = offset;
    validate();
}

void Qubo::validate() const {
    if (Q.rows() != n || Q.cols() != n) {
        throw std::invalid_argument("QUBO dimensions disagree with n=" + std::to_string(n));
    }
    if (!Q.allFinite() || !std::isfinite(offset)) {
        throw std::invalid_argument("QUBO has non-finite entries");
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < i; ++j) {
            if (Q(i, j) != 0.0) {
                throw std::invalid_argument("QUBO storage is upper-triangular");
            }
        }
    }
}

IsingProblem graph_to_ising(const Graph &g) {
    IsingProblem p(g.size());
    for (const auto &e : g.edges()) {
        p.set_coupling(e.u - 1, e.v - 1, -e.weight);
    }
    return p;
}

double energy(const IsingProblem &p, const SpinConfig &s) {
    if (s.size() != p.n) {
        throw std::invalid_argument("spin config has " + std::to_string(s.size()) + " entries, problem has " +
                                    std::to_string(p.n));
    }
    double e = p.offset;
    for (int i = 0; i < p.n; ++i) {
        e -= p.h(i) * s[i];
        for (int j = i + 1; j < p.n; ++j) {
            e -= p.J(i, j) * s[i] * s[j];
        }
    }
    return e;
}

double qubo_value(const Qubo &q, const std::vector<int> &x) {
    if (static_cast<int>(x.size()) != q.n) {
        throw std::invalid_argument("assignment length does not match QUBO size");
    }
    double f = q.offset;
    for (int i = 0; i < q.n; ++i) {
        if (x[static_cast<size_t>(i)] == 0) {
            continue;
        }
        f += q.Q(i, i);
        for (int j = i + 1; j < q.n; ++j) {
            if (x[static_cast<size_t>(j)] != 0) {
                f += q.Q(i, j);
            }
        }
    }
    return f;
}

IsingProblem qubo_to_ising(const Qubo &q) {
    q.validate();
    IsingProblem p(q.n);
    p.offset = q.offset;
    for (int i = 0; i < q.n; ++i) {
        // Q_ii x_i = Q_ii / 2 + Q_ii s_i / 2
        p.h(i) -= q.Q(i, i) / 2;
        p.offset += q.Q(i, i) / 2;
        for (int j = i + 1; j < q.n; ++j) {
            // Q_ij x_i x_j = Q_ij / 4 (1 + s_i + s_j + s_i s_j)
            const double c = q.Q(i, j) / 4;
            p.set_coupling(i, j, -c);
            p.h(i) -= c;
            p.h(j) -= c;
            p.offset += c;
        }
    }
    return p;
}

Qubo ising_to_qubo(const IsingProblem &p) {
    p.validate();
    Qubo q(p.n);
    q.offset = p.offset;
    for (int i = 0; i < p.n; ++i) {
        // -h s = -2 h x + h
        q.Q(i, i) -= 2 * p.h(i);
        q.offset += p.h(i);
        for (int j = i + 1; j < p.n; ++j) {
            // -J s_i s_j = -J (4 x_i x_j - 2 x_i - 2 x_j + 1)
            const double c = p.J(i, j);
            q.Q(i, j) -= 4 * c;
            q.Q(i, i) += 2 * c;
            q.Q(j, j) += 2 * c;
            q.offset -= c;
        }
    }
    return q;
}

std::vector<int> spins_to_binary(const SpinConfig &s) {
    std::vector<int> x(static_cast<size_t>(s.size()));
    for (int i = 0; i < s.size(); ++i) {
        x[static_cast<size_t>(i)] = (1 + s[i]) / 2;
    }
    return x;
}

} // namespace oscim
