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

#ifndef SWEEPSF_PARAMS_HPP_
#define SWEEPSF_PARAMS_HPP_

#include <cmath>
#include <cstdint>
#include <string>

namespace sweepsf {

/// Scaled selection strength, scaled recombination and sample size.
///
/// The recombination rate of the diffusion is rho = gamma * alpha / log(alpha),
/// so gamma is the expected number of effective recombinations along one
/// lineage over a whole sweep (to leading order).
struct SweepParams {
  double alpha = 0.0;
  double gamma = 0.0;
  int n = 1;

  /// Throws DomainError unless alpha > 1, gamma >= 0 and n >= 1.
  void validate() const;

  double log_alpha() const { return std::log(alpha); }
  double rho() const { return gamma * alpha / std::log(alpha); }
  /// gamma / log(alpha): the per-line mark probability scale in Yule time.
  double mark_scale() const { return gamma / std::log(alpha); }
  /// floor(alpha), the Yule time at which marking stops.
  std::int64_t yule_cap() const {
    return static_cast<std::int64_t>(std::floor(alpha));
  }

  std::string to_string() const;
};

}  // namespace sweepsf

#endif  // SWEEPSF_PARAMS_HPP_
