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


#ifndef SWEEPSF_FORMULA_HPP_
#define SWEEPSF_FORMULA_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sweepsf/joint_pmf.hpp"
#include "sweepsf/params.hpp"
#include "sweepsf/partition.hpp"
#include "sweepsf/rng.hpp"

namespace sweepsf {

// Law of the first Yule time F at which the sample genealogy has n lines.

/// P[F <= i] = prod_{j=1}^{n-1} (i-j)/(i+j); 0 for i < n, 1 for n = 1.
double f_cdf(int n, std::int64_t i);
/// P[F > i], evaluated without cancellation for large i.
double f_survival(int n, std::int64_t i);
/// P[F = f].
double f_pmf(int n, std::int64_t f);

/// Largest value sample_f returns; larger draws are clamped.
inline constexpr std::int64_t kMaxF = std::int64_t{1} << 62;

/// Inverse-cdf draw of F.
std::int64_t sample_f(int n, Rng& rng);
std::int64_t sample_f(int n, std::uint64_t seed);

/// Probability that a line present from Yule time f on escapes all
/// marks up to floor(alpha): exp(-(gamma/log alpha) sum_{i=f}^{floor alpha}
/// 1/i), and 1 for f > floor(alpha).
double p_late(const SweepParams& params, std::int64_t f);

/// P[S = s] for 0 <= s <= n. Throws ValidityError if P[S = 0] < 0.
double s_pmf(const SweepParams& params, int s);
/// The whole law of S, indices 0..n.
std::vector<double> s_law(const SweepParams& params);

/// P[S = s, M = 1] with the finite sums over Yule times 1..floor(alpha),
/// s >= 2 through A(n, s, alpha) and s = 1 through the two-binomial sum.
double s_pmf_finite_alpha(const SweepParams& params, int s);
/// The same quantity as the double sum over Yule time i and line count k of
/// P[S = s | one mark at i, K_i = k] * P[M_i = 1, K_i = k] (first order).
double s_pmf_finite_alpha_by_k(const SweepParams& params, int s);

/// Precomputed approximate law: F, p_F, L | F ~ Bin(n, 1 - p_F), S
/// independent of (F, L), E | S, L hypergeometric.
class Thm1Law {
 public:
  /// Throws DomainError unless params are valid and alpha > e, and
  /// ValidityError if the law of S has a negative entry.
  explicit Thm1Law(const SweepParams& params);

  const SweepParams& params() const { return params_; }
  std::int64_t f_cap() const { return f_cap_; }

  /// p_f from the cached suffix harmonic sums.
  double p(std::int64_t f) const;
  /// E[p_F^a (1 - p_F)^b], with the mass of F > f_cap carried exactly.
  double moment(int a, int b) const;
  /// P[L = l] = C(n, l) E[p_F^(n-l) (1 - p_F)^l].
  double l_pmf(int l) const;
  const std::vector<double>& s_law() const { return s_law_; }

  /// One draw of (S, L, E); M is 1 when S > 0.
  PartitionStats sample(Rng& rng) const;

 private:
  SweepParams params_;
  std::int64_t f_cap_ = 0;
  std::vector<double> suffix_harmonic_;  // index f -> sum_{i=f}^{f_cap} 1/i
  std::vector<double> f_cdf_;            // index f -> P[F <= f], f <= f_cap
  std::vector<double> f_pmf_;
  std::vector<double> s_law_;
  std::vector<double> s_cdf_;
};

PartitionStats sample_thm1_partition(const Thm1Law& law, std::uint64_t seed);
PartitionStats sample_thm1_partition(const SweepParams& params,
                                     std::uint64_t seed);

/// P[E = e, L = l] = P[L = l] sum_s hypergeometric(e; s, n, l) P[S = s].
JointPmf joint_pmf_exact_sum(const SweepParams& params);
JointPmf joint_pmf_exact_sum(const Thm1Law& law);

/// The published three-branch closed form, transcribed
/// term by term.
JointPmf joint_pmf_printed(const SweepParams& params);
JointPmf joint_pmf_printed(const Thm1Law& law);

struct DiffEntry {
  int e = 0;
  int l = 0;
  double reference = 0.0;
  double other = 0.0;
  double diff = 0.0;  // other - reference
};

/// Entrywise other - reference over the union of supports.
std::vector<DiffEntry> diff_report(const JointPmf& reference,
                                   const JointPmf& other);

struct Marginals {
  std::vector<double> L;  // P[L = l], l = 0..n
  std::vector<double> S;  // P[S = s]
  std::vector<double> E;  // P[E = e]
};

Marginals marginals(const Thm1Law& law, const JointPmf& joint);

/// The two-locus sample summaries of the numerical comparison: for n = 1
/// {"pinb"}; for n = 2 {"p2inb", "p2cinb", "p1B1b"}. DomainError otherwise.
std::map<std::string, double> derived_stats(const SweepParams& params);

/// pinb (from n = 1) together with the three n = 2 summaries.
std::map<std::string, double> table1_stats(double alpha, double gamma);

/// alpha = 2 N s, rho = 2 N r, gamma = (r / s) log alpha.
/// Throws ValidityError if alpha <= e.
SweepParams map_moran_params(double N, double s, double r, int n = 1);

}  // namespace sweepsf

#endif  // SWEEPSF_FORMULA_HPP_
