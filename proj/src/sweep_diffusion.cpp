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


#include "sweepsf/sweep_diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "sweepsf/errors.hpp"
#include "sweepsf/numerics.hpp"
#include "sweepsf/parallel.hpp"

namespace sweepsf {

void SweepPath::check_invariants() const {
  if (xs.size() < 2) throw DomainError("sweep path needs at least two points");
  if (xs.front() != 0.0) throw DomainError("sweep path must start at 0");
  if (xs.back() != 1.0) throw DomainError("sweep path must end at 1");
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
    if (!(xs[k] >= 0.0 && xs[k] < 1.0)) {
      throw DomainError("sweep path value outside [0,1) before fixation");
    }
  }
  const double expect = static_cast<double>(xs.size() - 1) * dt;
  if (fixation_time != expect) {
    throw DomainError("fixation time does not match the grid length");
  }
}

double SweepPath::hitting_time(double level) const {
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (xs[k] >= level) return static_cast<double>(k) * dt;
  }
  return fixation_time;
}

double sweep_drift(double alpha, double x) {
  if (x <= 0.0) return 2.0;
  if (x >= 1.0) return 0.0;
  const double ax = alpha * x;
  // coth(ax/2) = (1 + e^{-ax}) / (1 - e^{-ax})
  return (1.0 - x) * ax * (1.0 + std::exp(-ax)) / (-std::expm1(-ax));
}

SweepPath simulate_sweep_path(const SweepParams& params, double dt, Rng& rng) {
  params.validate();
  if (!(dt > 0.0)) throw ConfigError("dt must be positive");
  if (dt * params.alpha > (1.0 / 50.0) * (1.0 + 1e-12)) {
    throw ConfigError("dt = " + format_double(dt) +
                      " is too coarse: need dt <= 1/(50 alpha) = " +
                      format_double(1.0 / (50.0 * params.alpha)));
  }
  SweepPath path;
  path.alpha = params.alpha;
  path.dt = dt;
  path.xs.reserve(static_cast<std::size_t>(4.0 * std::log(params.alpha) /
                                           (params.alpha * dt)) + 16);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double sdt = std::sqrt(dt);
  double x = 0.0;
  path.xs.push_back(x);
  for (;;) {
    const double z = normal(rng);
    x += sweep_drift(params.alpha, x) * dt + std::sqrt(2.0 * x * (1.0 - x)) * sdt * z;
    if (x >= 1.0) {
      path.xs.push_back(1.0);
      break;
    }
    if (x < 0.0) x = 0.0;
    path.xs.push_back(x);
  }
  path.fixation_time = static_cast<double>(path.xs.size() - 1) * dt;
  path.check_invariants();
  return path;
}

SweepPath simulate_sweep_path(const SweepParams& params, double dt,
                              std::uint64_t seed) {
  Rng rng(seed);
  return simulate_sweep_path(params, dt, rng);
}

double green_function(double alpha, double x, double xi) {
  if (!(xi > 0.0 && xi < 1.0)) {
    throw DomainError("green_function needs 0 < xi < 1");
  }
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError("green_function needs 0 <= x <= 1");
  }
  if (!(alpha > 0.0)) throw DomainError("green_function needs alpha > 0");
  const double denom = alpha * xi * (1.0 - xi) * (-std::expm1(-alpha));
  const double a_xi = -std::expm1(-alpha * xi);
  if (x <= xi) {
    return (-std::expm1(-alpha * (1.0 - xi))) * (a_xi / denom);
  }
  // (e^{-ax} - e^{-a})(e^{a xi} - 1)(1 - e^{-a xi}) / (1 - e^{-ax}), with
  // the exponentials regrouped so nothing overflows. a_xi / denom stays O(1)
  // for tiny xi, where a_xi^2 alone would underflow.
  return std::exp(-alpha * (x - xi)) * (-std::expm1(-alpha * (1.0 - x))) *
         (a_xi / denom) * (a_xi / (-std::expm1(-alpha * x)));
}

namespace {

constexpr double kRelTol = 1e-8;
// Per-panel target; tighter than roundoff allows for G near the ends.
constexpr double kPanelTol = 1e-10;

// lo, lo + h, lo + 2h, lo + 4h, ... and the mirror image from hi (starting
// at h_hi), so that each panel spans about one octave of the distance to the
// nearest end.
std::vector<double> octave_breaks(double lo, double hi, double h, double h_hi) {
  std::vector<double> b{lo, hi};
  const double mid = 0.5 * (lo + hi);
  for (double d = h; lo + d < mid; d *= 2.0) b.push_back(lo + d);
  for (double d = h_hi; hi - d > mid; d *= 2.0) b.push_back(hi - d);
  b.push_back(mid);
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return b;
}

struct Integral {
  double value = 0.0;
  double error = 0.0;
};

template <typename F>
Integral integrate_panels(F f, double lo, double hi, double h,
                          unsigned depth = 12, double h_hi = 0.0) {
  using boost::math::quadrature::gauss_kronrod;
  Integral out;
  if (!(hi > lo)) return out;
  const auto breaks = octave_breaks(lo, hi, h, h_hi > 0.0 ? h_hi : h);
  NeumaierSum v;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    // Boost's recursion mixes scaled and unscaled error estimates unless
    // the interval is [-1, 1], so map each panel there first.
    const double mean = 0.5 * (breaks[k] + breaks[k + 1]);
    const double half = 0.5 * (breaks[k + 1] - breaks[k]);
    auto g = [&](double t) { return half * f(mean + half * t); };
    double err = 0.0;
    v += gauss_kronrod<double, 61>::integrate(g, -1.0, 1.0, depth, kPanelTol, &err);
    out.error += err;
  }
  out.value = v.value();
  return out;
}

void check_accuracy(const Integral& r, const std::string& what) {
  if (!std::isfinite(r.value) || r.error > kRelTol * std::fabs(r.value)) {
    throw NumericalError(what + ": quadrature value " + format_double(r.value) +
                         " with error estimate " + format_double(r.error) +
                         " misses relative tolerance 1e-8");
  }
}

}  // namespace

double duration_variance_quadrature(double alpha) {
  if (!(alpha > 1.0)) throw DomainError("duration quadrature needs alpha > 1");
  const double h = 1.0 / alpha;
  double inner_err = 0.0;
  auto inner = [&](double xi) {
    auto g = [&](double eta) { return green_function(alpha, xi, eta); };
    // G(xi, .) varies on the scale 1 - xi next to eta = xi.
    const double h_hi = std::max(std::min(h, 0.5 * (1.0 - xi)), 1e-300);
    const Integral r = integrate_panels(g, 0.0, xi, h, 8, h_hi);
    inner_err = std::max(inner_err, r.error);
    return r.value;
  };
  auto outer = [&](double xi) {
    if (xi <= 0.0 || xi >= 1.0) return 0.0;
    return green_function(alpha, 0.0, xi) * inner(xi);
  };
  Integral r = integrate_panels(outer, 0.0, 1.0, h);
  r.value *= 2.0;
  // Inner errors enter weighted by G(0, .), whose integral is E[T].
  auto g0 = [&](double xi) {
    return (xi <= 0.0 || xi >= 1.0) ? 1.0 : green_function(alpha, 0.0, xi);
  };
  const double mean = integrate_panels(g0, 0.0, 1.0, h).value;
  r.error = 2.0 * (r.error + inner_err * mean);
  check_accuracy(r, "Var[T]");
  return r.value;
}

DurationStats duration_mean_quadrature(double alpha, double eps) {
  if (!(alpha > 1.0)) throw DomainError("duration quadrature needs alpha > 1");
  if (!(eps > 0.0 && eps <= 1.0)) {
    throw DomainError("duration quadrature needs 0 < eps <= 1");
  }
  const double h = 1.0 / alpha;
  auto g0 = [&](double xi) {
    return (xi <= 0.0 || xi >= 1.0) ? 1.0 : green_function(alpha, 0.0, xi);
  };
  DurationStats st;
  st.source = DurationSource::quadrature;
  const Integral mean = integrate_panels(g0, 0.0, 1.0, h);
  check_accuracy(mean, "E[T]");
  st.mean_T = mean.value;
  if (eps >= 1.0) {
    st.mean_T_to_eps = st.mean_T;
  } else {
    auto geps = [&](double xi) {
      return (xi <= 0.0) ? 0.0 : green_function(alpha, eps, xi);
    };
    const Integral a = integrate_panels(g0, 0.0, eps, h);
    const Integral b = integrate_panels(geps, 0.0, eps, h);
    Integral d{a.value - b.value, a.error + b.error};
    check_accuracy(d, "E[T_eps]");
    st.mean_T_to_eps = d.value;
  }
  st.var_T = duration_variance_quadrature(alpha);
  return st;
}

DurationStats duration_monte_carlo(double alpha, double dt,
                                   std::uint64_t paths, std::uint64_t seed,
                                   double eps, unsigned threads) {
  if (paths < 2) throw DomainError("duration_monte_carlo needs >= 2 paths");
  const SweepParams params{alpha, 0.0, 1};
  struct Sample {
    double T = 0.0;
    double Teps = 0.0;
  };
  const auto samples = run_replicates(paths, threads, [&](std::uint64_t r) {
    const SweepPath p =
        simulate_sweep_path(params, dt, derive_seed(seed, r, Stream::path));
    return Sample{p.fixation_time, p.hitting_time(eps)};
  });
  std::vector<double> T, Te;
  T.reserve(paths);
  Te.reserve(paths);
  for (const auto& s : samples) {
    T.push_back(s.T);
    Te.push_back(s.Teps);
  }
  const SampleMoments mT = sample_moments(T);
  const SampleMoments mE = sample_moments(Te);
  NeumaierSum m4;
  for (double t : T) m4 += std::pow(t - mT.mean, 4);
  const double mu4 = m4.value() / static_cast<double>(paths);
  DurationStats st;
  st.source = DurationSource::monte_carlo;
  st.mean_T = mT.mean;
  st.var_T = mT.var;
  st.mean_T_to_eps = mE.mean;
  st.se_mean_T = mT.se_mean();
  st.se_mean_T_to_eps = mE.se_mean();
  st.se_var_T = std::sqrt(std::max(0.0, mu4 - mT.var * mT.var) /
                          static_cast<double>(paths));
  st.paths = paths;
  return st;
}

}  // namespace sweepsf
