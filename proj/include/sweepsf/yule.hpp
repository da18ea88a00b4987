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


#ifndef SWEEPSF_YULE_HPP_
#define SWEEPSF_YULE_HPP_

#include <cstdint>
#include <map>
#include <vector>

#include "sweepsf/params.hpp"
#include "sweepsf/partition.hpp"
#include "sweepsf/rng.hpp"

namespace sweepsf {

// Laws of K_i, the number of lines at Yule time i that are ancestral to a
// sample of n leaves. K_1 = 1 and K is a pure birth chain absorbed at n.

/// P[K_{i+1} = k + 1 | K_i = k] = (n - k) / (n + i); 1 <= k <= min(i, n).
double k_up_probability(int n, std::int64_t i, int k);

/// P[K_i = k] = C(n-1, n-k) C(i, k) / C(n+i-1, n); 1 <= k <= min(i, n).
double k_pmf(int n, std::int64_t i, int k);

/// P[K_j = l | K_i = k] for i <= j, k <= l.
double k_multistep_pmf(int n, std::int64_t i, int k, std::int64_t j, int l);

/// P[K_i = k | K_j = l] for 1 <= i, l <= j, k <= min(i, l), l <= n. The
/// value does not depend on n; n only enters the range check.
double k_backward_pmf(int n, std::int64_t i, int k, std::int64_t j, int l);

/// The same backward law as a sum over the number u of sampled people at
/// time j who are among the i ancestors.
double k_backward_pmf_by_ancestors(int n, std::int64_t i, int k,
                                   std::int64_t j, int l);

/// P[F = f | K_i = k] for k < n, f > i.
double f_pmf_given_k(int n, std::int64_t i, int k, std::int64_t f);

/// Analytic bound C i / f0 with C = n^2 on P[F > f0 | K_i = k], obtained by
/// summing the pointwise bound C i / f^2 over f > f0.
double f_tail_bound(int n, std::int64_t i, std::int64_t f0);

/// P[S = s | one mark at Yule time i on one of the K_i = k lines]: the
/// number of sample leaves below a uniformly chosen fertile line,
/// C(n-s-1, n-s-(k-1)) / C(n-1, n-k), for 1 <= k <= n-1, 1 <= s <= n-k+1.
double early_family_size_pmf(int n, std::int64_t i, int k, int s);

struct KChainTrace {
  int n = 0;
  std::int64_t i_max = 0;
  // up_times[k - 1] = first Yule time with K = k (up_times[0] = 1).
  std::vector<std::int64_t> up_times;
  std::int64_t first_full_time = 0;  // F, the first i with K_i = n

  int k_at(std::int64_t i) const;
  /// K_1, ..., K_{i_max}.
  std::vector<int> values() const;
};

/// Runs the chain to absorption at n (F is always recorded, even when it
/// exceeds i_max; waiting times are drawn in one step each). Requires
/// i_max >= n.
KChainTrace simulate_k_chain(int n, std::int64_t i_max, std::uint64_t seed);
KChainTrace simulate_k_chain(int n, std::int64_t i_max, Rng& rng);

struct MarkedYuleOutcome {
  LabeledPartition partition;
  PartitionStats stats;  // M: early marks; S: leaves under the first early mark
  std::int64_t F_observed = 0;
  std::map<std::int64_t, int> marks_per_yule_time;
};

/// Marked Yule tree of the sample: the fertile lines carry their leaf sets
/// and split per the block-leader urn (a line with D leaves splits into two
/// fertile lines with weight (D - 1) / (n + i), its leaves divided with a
/// uniform size in 1..D-1 and a uniform subset). At Yule times
/// i <= floor(alpha), the k fertile lines receive
/// Geometric(1 / (1 + (k / i) gamma / log alpha)) - 1 marks, each on a
/// uniformly chosen line. Each leaf belongs to the family of the most
/// recent mark above it. Stretches without events are skipped in one draw.
/// Requires alpha > e.
MarkedYuleOutcome simulate_marked_yule(const SweepParams& params,
                                       std::uint64_t seed);
MarkedYuleOutcome simulate_marked_yule(const SweepParams& params, Rng& rng);

}  // namespace sweepsf

#endif  // SWEEPSF_YULE_HPP_
