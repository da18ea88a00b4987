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


#ifndef SWEEPSF_SWEEP_DIFFUSION_HPP_
#define SWEEPSF_SWEEP_DIFFUSION_HPP_

#include <cstdint>
#include <vector>

#include "sweepsf/params.hpp"
#include "sweepsf/rng.hpp"

namespace sweepsf {

/// Grid trajectory of the beneficial allele frequency, 0 at time 0 and 1 at
/// the fixation time T = (xs.size() - 1) * dt.
struct SweepPath {
  double alpha = 0.0;
  double dt = 0.0;
  std::vector<double> xs;
  double fixation_time = 0.0;

  /// Throws DomainError if the trajectory violates the path invariants.
  void check_invariants() const;
  /// First grid time at which X >= level.
  double hitting_time(double level) const;
};

/// alpha x (1 - x) coth(alpha x / 2), continued by 2 at x = 0.
double sweep_drift(double alpha, double x);

/// Euler-Maruyama path of dX = alpha X (1-X) coth(alpha X / 2) dt
/// + sqrt(2 X (1-X)) dW started at 0, clamped to [0, 1] and stopped on the
/// first step that reaches 1. Throws ConfigError if dt * alpha > 1/50.
SweepPath simulate_sweep_path(const SweepParams& params, double dt,
                              std::uint64_t seed);
SweepPath simulate_sweep_path(const SweepParams& params, double dt, Rng& rng);

/// Occupation density G(x, xi) of the path started at x. Requires
/// 0 < xi < 1 and 0 <= x <= 1.
double green_function(double alpha, double x, double xi);

enum class DurationSource { quadrature, monte_carlo };

struct DurationStats {
  double mean_T = 0.0;
  double var_T = 0.0;
  double mean_T_to_eps = 0.0;
  DurationSource source = DurationSource::quadrature;
  // Monte Carlo only.
  double se_mean_T = 0.0;
  double se_var_T = 0.0;
  double se_mean_T_to_eps = 0.0;
  std::uint64_t paths = 0;
};

/// E[T], E[T_eps] (first time X reaches eps) and Var[T] by adaptive
/// Gauss-Kronrod quadrature of the Green's function, with breakpoints
/// refined geometrically towards 0, 1 and eps. Throws NumericalError if
/// the relative error estimate exceeds 1e-8.
DurationStats duration_mean_quadrature(double alpha, double eps = 0.5);

/// Var[T] = 2 int_0^1 G(0, xi) int_0^xi G(xi, eta) d eta d xi.
double duration_variance_quadrature(double alpha);

/// Sample moments of T and T_eps over `paths` simulated paths.
DurationStats duration_monte_carlo(double alpha, double dt,
                                   std::uint64_t paths, std::uint64_t seed,
                                   double eps = 0.5, unsigned threads = 0);

}  // namespace sweepsf

#endif  // SWEEPSF_SWEEP_DIFFUSION_HPP_
