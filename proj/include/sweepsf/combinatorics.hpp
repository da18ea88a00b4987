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


#ifndef SWEEPSF_COMBINATORICS_HPP_
#define SWEEPSF_COMBINATORICS_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace sweepsf {

using u128 = unsigned __int128;

/// Decimal text of a 128-bit unsigned integer.
std::string u128_to_string(u128 v);

/// Exact C(n, k) for 0 <= k <= n; 0 when k < 0 or k > n.
/// Throws std::overflow_error if the value does not fit in 128 bits.
u128 binomial_exact(std::int64_t n, std::int64_t k);

/// C(n, k) as a double. Exact (up to rounding of the final value) while the
/// integer fits in 128 bits, product form for small k, log-gamma beyond.
/// Negative upper index follows C(n, 0) = 1 and
/// C(n, k) = (-1)^k C(k - n - 1, k); k < 0 gives 0.
double binomial(std::int64_t n, std::int64_t k);

/// log C(n, k) for 0 <= k <= n.
double log_binomial(std::int64_t n, std::int64_t k);

/// Number of ways to put n indistinguishable balls into i boxes,
/// C(n + i - 1, n). Requires i >= 1 and n >= 0.
u128 bose_einstein_count(std::int64_t i, std::int64_t n);

/// Number of occupancy vectors of n balls in k boxes with every box
/// nonempty, C(n - 1, n - k). Requires k >= 1, n >= 0.
u128 positive_occupancy_count(std::int64_t k, std::int64_t n);

using OccupancyVector = std::vector<int>;

inline constexpr std::uint64_t kMaxEnumeration = 1000000;

/// All occupancy vectors of n balls in i boxes in lexicographic order.
/// Throws SizeError if there are more than kMaxEnumeration of them.
std::vector<OccupancyVector> bose_einstein_enumerate(int i, int n);

/// P[E = e] for E hypergeometric: drawing n - l of n items of which s are
/// marked, e of the draws marked. C(s,e) C(n-s, n-l-e) / C(n, n-l).
double hypergeometric_pmf(int e, int s, int n, int l);

/// sum_{i=a}^{b} 1/i for 1 <= a <= b (0 when a > b).
double harmonic_partial_sum(std::int64_t a, std::int64_t b);

/// H_m = harmonic_partial_sum(1, m), H_0 = 0.
double harmonic_number(std::int64_t m);

// Sums over Yule times i = 1..N of ratios of rising products; the building
// blocks of the finite-alpha early-family law.

/// sum_{i=1}^{N} 1 / C(n + i - 1, n).
double inverse_be_sum(int n, std::int64_t N);

/// A(n, s, N) = sum_{i=1}^{N} C(n - s + i - 2, n - s) / C(n + i - 1, n).
double a_sum(int n, int s, std::int64_t N);

/// A_{m,n} = sum_{i=1}^{N} (i-1)...(i-m+1) / ((i+n-1)...i); the numerator
/// is empty for m = 1.
double a_mn_sum(int m, int n, std::int64_t N);

struct IdentityCheck {
  std::string name;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

// alpha * |deviation| of an O(1/alpha) approximation over an alpha grid.
struct FittedConstant {
  std::string name;
  std::vector<double> alphas;
  std::vector<double> scaled_deviation;
  double constant = 0.0;  // max of scaled_deviation
  bool bounded = false;   // no growth of scaled_deviation along the grid
};

struct IdentityReport {
  int n_max = 0;
  std::vector<double> alpha_grid;
  std::vector<IdentityCheck> checks;
  std::vector<FittedConstant> constants;

  bool all_pass() const;
  std::string to_json() const;
};

/// Exact identities (telescoped sums, recursions, unrolled recursions) and
/// O(1/alpha) limits of the A-sums for 2 <= n <= n_max on alpha_grid
/// (sorted ascending). Requires n_max <= 8.
IdentityReport identity_suite(int n_max, const std::vector<double>& alpha_grid);

}  // namespace sweepsf

#endif  // SWEEPSF_COMBINATORICS_HPP_
