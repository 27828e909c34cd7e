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

#ifndef OSCIM_CLI_HPP_
#define OSCIM_CLI_HPP_

#include <ostream>

namespace oscim {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitSimulation = 2;

/// Entry point of the oscim command line: solve, oracle, sweep and convert.
/// Returns the process exit code; 1 for configuration errors, 2 for
/// simulation failures.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace oscim

#endif // OSCIM_CLI_HPP_
