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

#include "oscim/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace oscim {
namespace {

void check_size(int n) {
    if (n > kMaxOracleSpins) {
        throw std::out_of_range("exhaustive oracle is limited to n <= " + std::to_string(kMaxOracleSpins) +
                                ", got n=" + std::to_string(n));
    }
}

// Walks all 2^n masks in Gray-code order. `delta(i, spins)` returns the change
// of the objective when spin i is flipped from its current value. Candidates
// within the tie window of the running best are re-scored exactly by `score`.
template <typename Delta, typename Score>
OracleResult enumerate(int n, bool maximize, double magnitude, Delta delta, Score score) {
    check_size(n);
    std::vector<int8_t> spins(static_cast<size_t>(n), 1);
    const uint64_t total = uint64_t{1} << n;
    const double tol = oracle_tie_tolerance(magnitude);

    double value = score(uint64_t{0});
    double best = value;
    std::vector<uint64_t> candidates{0};
    uint64_t gray = 0;

    for (uint64_t k = 1; k < total; ++k) {
        const int bit = std::countr_zero(k);
        value += delta(bit, spins);
        spins[static_cast<size_t>(bit)] = static_cast<int8_t>(-spins[static_cast<size_t>(bit)]);
        gray ^= uint64_t{1} << bit;

        const bool better = maximize ? value > best + tol : value < best - tol;
        if (better) {
            best = value;
            candidates.clear();
            candidates.push_back(gray);
        } else if (std::abs(value - best) <= tol) {
            candidates.push_back(gray);
            if (maximize ? value > best : value < best) {
                best = value;
            }
        }
    }

    // Re-score exactly to remove accumulated rounding from the incremental walk.
    std::vector<double> exact(candidates.size());
    double opt = maximize ? -INFINITY : INFINITY;
    for (size_t i = 0; i < candidates.size(); ++i) {
        exact[i] = score(candidates[i]);
        opt = maximize ? std::max(opt, exact[i]) : std::min(opt, exact[i]);
    }
    OracleResult out;
    out.n = n;
    out.optimum = opt;
    for (size_t i = 0; i < candidates.size(); ++i) {
        if (std::abs(exact[i] - opt) <= tol) {
            out.masks.push_back(candidates[i]);
        }
    }
    std::sort(out.masks.begin(), out.masks.end());
    return out;
}

} // namespace

double oracle_tie_tolerance(double magnitude) { return 1e-9 * std::max(1.0, magnitude); }

bool OracleResult::contains(const SpinConfig &s) const {
    if (s.size() != n) {
        return false;
    }
    uint64_t mask = 0;
    for (int i = 0; i < n; ++i) {
        if (s[i] == -1) {
            mask |= uint64_t{1} << i;
        }
    }
    return std::binary_search(masks.begin(), masks.end(), mask);
}

std::vector<SpinConfig> OracleResult::configs() const {
    std::vector<SpinConfig> out;
    out.reserve(masks.size());
    for (auto m : masks) {
        out.push_back(SpinConfig::from_mask(m, n));
    }
    return out;
}

std::vector<std::string> OracleResult::normalized_bitstrings() const {
    std::vector<std::string> out;
    for (auto m : masks) {
        if ((m & 1U) == 0) {
            out.push_back(SpinConfig::from_mask(m, n).bitstring());
        } else {
            out.push_back(SpinConfig::from_mask(m, n).normalized().bitstring());
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

OracleResult brute_force_max_cut(const Graph &g) {
    const int n = g.size();
    check_size(n);
    std::vector<std::vector<std::pair<int, double>>> adj(static_cast<size_t>(n));
    double magnitude = 0;
    for (const auto &e : g.edges()) {
        adj[static_cast<size_t>(e.u - 1)].emplace_back(e.v - 1, e.weight);
        adj[static_cast<size_t>(e.v - 1)].emplace_back(e.u - 1, e.weight);
        magnitude += std::abs(e.weight);
    }
    auto delta = [&](int i, const std::vector<int8_t> &s) {
        double d = 0;
        for (const auto &[j, w] : adj[static_cast<size_t>(i)]) {
            // Equal spins become cut, opposite spins become uncut.
            d += (s[static_cast<size_t>(i)] == s[static_cast<size_t>(j)]) ? w : -w;
        }
        return d;
    };
    auto score = [&](uint64_t mask) { return cut_value(g, SpinConfig::from_mask(mask, n)); };
    return enumerate(n, true, magnitude, delta, score);
}

OracleResult brute_force_ground_states(const IsingProblem &p) {
    p.validate();
    check_size(p.n);
    const double magnitude = p.J.cwiseAbs().sum() / 2 + p.h.cwiseAbs().sum() + std::abs(p.offset);
    auto delta = [&](int i, const std::vector<int8_t> &s) {
        double local = p.h(i);
        for (int j = 0; j < p.n; ++j) {
            local += p.J(i, j) * s[static_cast<size_t>(j)];
        }
        // Flipping s_i changes -s_i * local by 2 s_i local.
        return 2.0 * s[static_cast<size_t>(i)] * local;
    };
    auto score = [&](uint64_t mask) { return energy(p, SpinConfig::from_mask(mask, p.n)); };
    return enumerate(p.n, false, magnitude, delta, score);
}

} // namespace oscim
