// Copyright 2026 The sweepsf Authors.
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


#ifndef SWEEPSF_CLI_HPP_
#define SWEEPSF_CLI_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace sweepsf {

inline constexpr const char* kVersion = "1.0.0";

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitFlags = 2,
  kExitValidity = 3,
  kExitStepSize = 4,
};

/// kDefaultSeed unless SWEEPSF_SEED holds an unsigned integer.
std::uint64_t default_seed();

struct RunConfig {
  std::string subcommand;
  int n = 1;
  double alpha = 0.0;
  double gamma = 0.0;
  double N = 0.0;  // population size; with s and r replaces alpha and gamma
  double s = 0.0;
  double r = 0.0;
  std::uint64_t reps = 10000;
  std::uint64_t seed = 0;
  double dt = 0.0;  // 0: 1 / (50 alpha)
  std::string output;
  std::string format = "csv";
  unsigned threads = 0;
  std::string model = "yule";
  std::vector<std::string> layers;
  std::vector<double> alpha_grid;
  double eps = 0.5;
  std::uint64_t mc_reps = 0;
  int n_max = 8;
  bool no_replicates = false;
};

/// Parses argv and runs one subcommand (formula, simulate, compare, table1,
/// duration, identities). Tables go to `out` (or --output), diagnostics to
/// `err`. Returns an ExitCode.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace sweepsf

#endif  // SWEEPSF_CLI_HPP_
