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

#ifndef OSCIM_RNG_HPP_
#define OSCIM_RNG_HPP_

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace oscim {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
constexpr uint64_t mix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Counter-based child seed: depends only on (master, stream, index), so runs
/// can be scheduled in any order or on any thread.
constexpr uint64_t derive_seed(uint64_t master, uint64_t stream, uint64_t index) {
    return mix64(mix64(master ^ mix64(stream)) + index);
}

/// Raised when an integration produces non-finite state.
class SimulationError : public std::runtime_error {
  public:
    explicit SimulationError(const std::string &what) : std::runtime_error(what) {}
};

} // namespace oscim

#endif // OSCIM_RNG_HPP_
