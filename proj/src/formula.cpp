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


#include "sweepsf/formula.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "sweepsf/combinatorics.hpp"
#include "sweepsf/errors.hpp"
#include "sweepsf/numerics.hpp"
#include "sweepsf/yule.hpp"

namespace sweepsf {

namespace {

// sum_{j=1}^{n-1} log((i-j)/(i+j)) for i >= n.
double log_f_cdf(int n, std::int64_t i) {
  const double x = static_cast<double>(i);
  double s = 0.0;
  for (int j = 1; j < n; ++j) s += std::log1p(-2.0 * j / (x + j));
  return s;
}

}  // namespace

double f_cdf(int n, std::int64_t i) {
  if (n < 1 || i < 1) throw DomainError("f_cdf needs n >= 1 and i >= 1");
  if (n == 1) return 1.0;
  if (i < n) return 0.0;
  double v = 1.0;
  for (int j = 1; j < n; ++j) {
    v *= static_cast<double>(i - j) / static_cast<double>(i + j);
  }
  return v;
}

double f_survival(int n, std::int64_t i) {
  if (n < 1 || i < 0) throw DomainError("f_survival needs n >= 1 and i >= 0");
  if (n == 1) return i >= 1 ? 0.0 : 1.0;
  if (i < n) return 1.0;
  return -std::expm1(log_f_cdf(n, i));
}

double f_pmf(int n, std::int64_t f) {
  if (n < 1) throw DomainError("f_pmf needs n >= 1");
  if (n == 1) return f == 1 ? 1.0 : 0.0;
  if (f < n) return 0.0;
  // K_1 = 1, so P[F = f] is the law of F given K_1 = 1, which has a
  // cancellation-free product form.
  return f_pmf_given_k(n, 1, 1, f);
}

std::int64_t sample_f(int n, Rng& rng) {
  if (n < 1) throw DomainError("sample_f needs n >= 1");
  if (n == 1) return 1;
  // F = min{f : P[F > f] <= V} with V uniform, i.e. inversion of the cdf.
  const double v = open_uniform(rng);
  std::int64_t lo = n - 1;  // survival(lo) = 1 > v
  std::int64_t hi = n;
  while (f_survival(n, hi) > v) {
    lo = hi;
    if (hi >= kMaxF / 2) return kMaxF;
    hi *= 2;
  }
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (f_survival(n, mid) > v) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

std::int64_t sample_f(int n, std::uint64_t seed) {
  Rng rng(seed);
  return sample_f(n, rng);
}

double p_late(const SweepParams& params, std::int64_t f) {
  params.validate();
  if (f < 1) throw DomainError("p_late needs f >= 1");
  const std::int64_t cap = params.yule_cap();
  if (f > cap || params.gamma == 0.0) return 1.0;
  return std::exp(-params.mark_scale() * harmonic_partial_sum(f, cap));
}

std::vector<double> s_law(const SweepParams& params) {
  params.validate();
  const int n = params.n;
  std::vector<double> law(static_cast<std::size_t>(n) + 1, 0.0);
  if (n == 1) {
    law[0] = 1.0;
    return law;
  }
  const double c = params.gamma * n / params.log_alpha();
  law[1] = c * harmonic_partial_sum(2, n - 1);
  for (int s = 2; s <= n - 1; ++s) law[s] = c / (static_cast<double>(s) * (s - 1));
  law[n] = c / (n - 1);
  law[0] = 1.0 - c * harmonic_number(n - 1);
  if (law[0] < 0.0) {
    throw ValidityError(
        "P[S = 0] = " + format_double(law[0]) + " < 0 at " + params.to_string() +
        ": gamma n / log(alpha) is too large for the approximation; increase "
        "alpha or decrease gamma");
  }
  return law;
}

double s_pmf(const SweepParams& params, int s) {
  if (s < 0 || s > params.n) throw DomainError("s_pmf needs 0 <= s <= n");
  return s_law(params)[static_cast<std::size_t>(s)];
}

double s_pmf_finite_alpha(const SweepParams& params, int s) {
  params.validate();
  const int n = params.n;
  if (s < 1 || s > n) throw DomainError("s_pmf_finite_alpha needs 1 <= s <= n");
  if (n == 1) return 0.0;
  const std::int64_t N = params.yule_cap();
  const double c = params.mark_scale();
  if (s >= 2) return c * a_sum(n, s, N);
  // C(n+i-3, n-1) / C(n+i-1, n) = n (i-1) / ((n+i-1)(n+i-2)) for i >= 2;
  // C(i-1, n-1) / C(n+i-1, n) = n (i-1)...(i-n+1) / ((i+n-1)...i).
  NeumaierSum sum;
  for (std::int64_t i = N; i >= 2; --i) {
    const double x = static_cast<double>(i);
    double first = n * (x - 1.0) / ((x + n - 1.0) * (x + n - 2.0));
    double second = 0.0;
    if (i >= n) {
      second = n;
      for (int t = 1; t <= n - 1; ++t) second *= (x - t) / (x + n - t);
      second /= x;
    }
    sum += first - second;
  }
  return c * sum.value();
}

double s_pmf_finite_alpha_by_k(const SweepParams& params, int s) {
  params.validate();
  const int n = params.n;
  if (s < 1 || s > n) {
    throw DomainError("s_pmf_finite_alpha_by_k needs 1 <= s <= n");
  }
  const std::int64_t N = params.yule_cap();
  const double c = params.mark_scale();
  NeumaierSum sum;
  for (std::int64_t i = N; i >= 1; --i) {
    const int kmax = static_cast<int>(std::min<std::int64_t>(i, n - 1));
    for (int k = 1; k <= kmax; ++k) {
      if (s > n - k + 1) continue;
      // One mark at Yule time i on one of k lines, to first order.
      const double one_mark = c * k / static_cast<double>(i);
      sum += early_family_size_pmf(n, i, k, s) * one_mark * k_pmf(n, i, k);
    }
  }
  return sum.value();
}

Thm1Law::Thm1Law(const SweepParams& params) : params_(params) {
  params_.validate();
  if (!(params_.alpha > std::exp(1.0))) {
    throw DomainError("the approximate law needs alpha > e");
  }
  f_cap_ = params_.yule_cap();
  const int n = params_.n;
  if (f_cap_ < n) {
    throw DomainError("the approximate law needs floor(alpha) >= n");
  }
  if (f_cap_ > 100000000) {
    throw SizeError("floor(alpha) > 1e8 is beyond the tabulated range");
  }
  const auto sz = static_cast<std::size_t>(f_cap_) + 2;
  suffix_harmonic_.assign(sz, 0.0);
  NeumaierSum run;
  for (std::int64_t f = f_cap_; f >= 1; --f) {
    run += 1.0 / static_cast<double>(f);
    suffix_harmonic_[static_cast<std::size_t>(f)] = run.value();
  }
  f_cdf_.assign(static_cast<std::size_t>(f_cap_) + 1, 0.0);
  f_pmf_.assign(static_cast<std::size_t>(f_cap_) + 1, 0.0);
  for (std::int64_t f = 1; f <= f_cap_; ++f) {
    f_pmf_[static_cast<std::size_t>(f)] = f_pmf(n, f);
    f_cdf_[static_cast<std::size_t>(f)] = f_cdf(n, f);
  }
  s_law_ = sweepsf::s_law(params_);
  s_cdf_.assign(s_law_.size(), 0.0);
  double acc = 0.0;
  for (std::size_t s = 0; s < s_law_.size(); ++s) {
    acc += s_law_[s];
    s_cdf_[s] = acc;
  }
}

double Thm1Law::p(std::int64_t f) const {
  if (f < 1) throw DomainError("p_f needs f >= 1");
  if (f > f_cap_ || params_.gamma == 0.0) return 1.0;
  return std::exp(-params_.mark_scale() *
                  suffix_harmonic_[static_cast<std::size_t>(f)]);
}

double Thm1Law::moment(int a, int b) const {
  if (a < 0 || b < 0) throw DomainError("moment needs a, b >= 0");
  const double c = params_.mark_scale();
  NeumaierSum sum;
  for (std::int64_t f = f_cap_; f >= params_.n; --f) {
    const double w = f_pmf_[static_cast<std::size_t>(f)];
    if (w == 0.0) continue;
    const double h = c * suffix_harmonic_[static_cast<std::size_t>(f)];
    const double pf = std::exp(-h);
    const double qf = -std::expm1(-h);
    sum += w * std::pow(pf, a) * std::pow(qf, b);
  }
  // F > floor(alpha): p_F = 1, so only b = 0 contributes.
  if (b == 0) sum += f_survival(params_.n, f_cap_);
  return sum.value();
}

double Thm1Law::l_pmf(int l) const {
  const int n = params_.n;
  if (l < 0 || l > n) return 0.0;
  return binomial(n, l) * moment(n - l, l);
}

PartitionStats Thm1Law::sample(Rng& rng) const {
  const int n = params_.n;
  PartitionStats st;
  st.n = n;
  // F by inversion of its cdf; beyond floor(alpha) only the fact F > cap
  // matters because p_F = 1 there.
  double pf = 1.0;
  const double u = open_uniform(rng);
  if (n == 1) {
    pf = p(1);
  } else if (u <= f_cdf_.back()) {
    const auto it = std::lower_bound(f_cdf_.begin() + n, f_cdf_.end(), u);
    pf = p(static_cast<std::int64_t>(it - f_cdf_.begin()));
  }
  for (int j = 0; j < n; ++j) {
    if (open_uniform(rng) >= pf) ++st.L;
  }
  const double us = open_uniform(rng) * s_cdf_.back();
  st.S = static_cast<int>(std::lower_bound(s_cdf_.begin(), s_cdf_.end(), us) -
                          s_cdf_.begin());
  st.S = std::min(st.S, n);
  // E: marked among n - L draws without replacement from n items, S marked.
  int marked = st.S, total = n;
  for (int d = 0; d < n - st.L; ++d) {
    std::uniform_int_distribution<int> pick(0, total - 1);
    if (pick(rng) < marked) {
      ++st.E;
      --marked;
    }
    --total;
  }
  st.M = st.S > 0 ? 1 : 0;
  st.n_nonrec = n - st.L - st.E;
  return st;
}

PartitionStats sample_thm1_partition(const Thm1Law& law, std::uint64_t seed) {
  Rng rng(seed);
  return law.sample(rng);
}

PartitionStats sample_thm1_partition(const SweepParams& params,
                                     std::uint64_t seed) {
  return sample_thm1_partition(Thm1Law(params), seed);
}

JointPmf joint_pmf_exact_sum(const Thm1Law& law) {
  const int n = law.params().n;
  JointPmf pmf(n, Producer::cor27_exact_sum);
  const auto& S = law.s_law();
  for (int l = 0; l <= n; ++l) {
    const double pl = law.l_pmf(l);
    for (int e = 0; e + l <= n; ++e) {
      NeumaierSum sum;
      for (int s = e; s <= n; ++s) sum += hypergeometric_pmf(e, s, n, l) * S[s];
      pmf.set(e, l, pl * sum.value());
    }
  }
  return pmf;
}

JointPmf joint_pmf_exact_sum(const SweepParams& params) {
  return joint_pmf_exact_sum(Thm1Law(params));
}

JointPmf joint_pmf_printed(const Thm1Law& law) {
  const int n = law.params().n;
  const double c = n * law.params().gamma / law.params().log_alpha();
  const double h2 = harmonic_partial_sum(2, n - 1);
  JointPmf pmf(n, Producer::cor27_printed);
  for (int l = 0; l <= n; ++l) {
    const double mom = law.moment(n - l, l);
    for (int e = 0; e + l <= n; ++e) {
      double bracket;
      if (e >= 2) {
        bracket = c *
                  ((n - 1) * binomial(n - 2, e - 2) * (l + e == n ? 1.0 : 0.0) +
                   binomial(n - 1, l)) /
                  (static_cast<double>(e) * (e - 1));
      } else if (e == 1) {
        double tail = 0.0;
        for (int s = 2; s <= n; ++s) tail += binomial(n - s, l - s + 1) / (s - 1);
        bracket = c * ((l + 1 == n ? 1.0 : 0.0) + binomial(n - 1, l) * h2 + tail);
      } else {
        double tail = 0.0;
        for (int s = 2; s <= n; ++s) {
          tail += binomial(n - s, n - l) / (static_cast<double>(s) * (s - 1));
        }
        bracket = binomial(n, l) * (1.0 - c * (1.0 - static_cast<double>(l) / n * h2)) +
                  c * ((l == n ? 1.0 / n : 0.0) + tail);
      }
      pmf.set(e, l, mom * bracket, /*allow_negative=*/true);
    }
  }
  return pmf;
}

JointPmf joint_pmf_printed(const SweepParams& params) {
  return joint_pmf_printed(Thm1Law(params));
}

std::vector<DiffEntry> diff_report(const JointPmf& reference,
                                   const JointPmf& other) {
  std::set<JointPmf::Key> keys;
  for (const auto& [k, v] : reference.table()) keys.insert(k);
  for (const auto& [k, v] : other.table()) keys.insert(k);
  std::vector<DiffEntry> out;
  for (const auto& k : keys) {
    DiffEntry d;
    d.e = k.first;
    d.l = k.second;
    d.reference = reference.get(k.first, k.second);
    d.other = other.get(k.first, k.second);
    d.diff = d.other - d.reference;
    out.push_back(d);
  }
  return out;
}

Marginals marginals(const Thm1Law& law, const JointPmf& joint) {
  const int n = law.params().n;
  Marginals m;
  m.L.assign(static_cast<std::size_t>(n) + 1, 0.0);
  m.E.assign(static_cast<std::size_t>(n) + 1, 0.0);
  for (int l = 0; l <= n; ++l) m.L[l] = law.l_pmf(l);
  m.S = law.s_law();
  for (const auto& [k, p] : joint.table()) m.E[k.first] += p;
  return m;
}

std::map<std::string, double> derived_stats(const SweepParams& params) {
  if (params.n != 1 && params.n != 2) {
    throw DomainError("derived_stats is defined for n = 1 or n = 2");
  }
  const Thm1Law law(params);
  std::map<std::string, double> out;
  if (params.n == 1) {
    out["pinb"] = law.l_pmf(1);
    return out;
  }
  const auto& S = law.s_law();
  out["p2inb"] = law.l_pmf(2) + S[2] * law.l_pmf(1);
  out["p2cinb"] = law.l_pmf(0) * S[2];
  out["p1B1b"] = law.l_pmf(1) * S[0];
  return out;
}

std::map<std::string, double> table1_stats(double alpha, double gamma) {
  auto out = derived_stats(SweepParams{alpha, gamma, 1});
  for (const auto& [k, v] : derived_stats(SweepParams{alpha, gamma, 2})) {
    out[k] = v;
  }
  return out;
}

SweepParams map_moran_params(double N, double s, double r, int n) {
  if (!(N > 0.0) || !(s > 0.0 && s < 1.0) || !(r >= 0.0)) {
    throw DomainError("map_moran_params needs N > 0, 0 < s < 1, r >= 0");
  }
  const double alpha = 2.0 * N * s;
  if (!(alpha > std::exp(1.0))) {
    throw ValidityError("2 N s = " + format_double(alpha) +
                        " must exceed e for the sweep approximation");
  }
  SweepParams p;
  p.alpha = alpha;
  p.gamma = (r / s) * std::log(alpha);
  p.n = n;
  return p;
}

}  // namespace sweepsf
