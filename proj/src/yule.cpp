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


#include "sweepsf/yule.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "sweepsf/combinatorics.hpp"
#include "sweepsf/errors.hpp"
#include "sweepsf/formula.hpp"

namespace sweepsf {

namespace {

using Binom = std::pair<std::int64_t, std::int64_t>;

// prod C(num) / prod C(den); exact integer binomials while they fit in a
// double's integer range, log-gamma otherwise.
double binomial_ratio(std::initializer_list<Binom> num,
                      std::initializer_list<Binom> den) {
  for (const auto& [a, b] : num) {
    if (b < 0 || b > a) return 0.0;
  }
  double v = 1.0;
  bool exact = true;
  for (const auto& [a, b] : num) {
    const double c = binomial(a, b);
    if (!(c < 9007199254740992.0)) exact = false;
    v *= c;
  }
  for (const auto& [a, b] : den) {
    const double c = binomial(a, b);
    if (!(c < 9007199254740992.0)) exact = false;
    v /= c;
  }
  if (exact && std::isfinite(v)) return v;
  double lg = 0.0;
  for (const auto& [a, b] : num) lg += log_binomial(a, b);
  for (const auto& [a, b] : den) lg -= log_binomial(a, b);
  return std::exp(lg);
}

void check_state(int n, std::int64_t i, int k, const char* what) {
  if (n < 1 || i < 1 || k < 1 || k > n || k > i) {
    throw DomainError(std::string(what) + ": need 1 <= k <= min(i, n), got n=" +
                      std::to_string(n) + " i=" + std::to_string(i) +
                      " k=" + std::to_string(k));
  }
}

}  // namespace

double k_up_probability(int n, std::int64_t i, int k) {
  check_state(n, i, k, "k_up_probability");
  return static_cast<double>(n - k) / static_cast<double>(n + i);
}

double k_pmf(int n, std::int64_t i, int k) {
  check_state(n, i, k, "k_pmf");
  return binomial_ratio({{n - 1, n - k}, {i, k}}, {{n + i - 1, n}});
}

double k_multistep_pmf(int n, std::int64_t i, int k, std::int64_t j, int l) {
  check_state(n, i, k, "k_multistep_pmf");
  if (j < i || l < k) {
    throw DomainError("k_multistep_pmf: need i <= j and k <= l");
  }
  check_state(n, j, l, "k_multistep_pmf");
  return binomial_ratio({{n - k, n - l}, {j + k - 1, i + l - 1}},
                        {{n + j - 1, n + i - 1}});
}

double k_backward_pmf(int n, std::int64_t i, int k, std::int64_t j, int l) {
  if (i < 1 || l < 1 || i > j || l > j || l > n || k < 1 || k > std::min<std::int64_t>(i, l)) {
    throw DomainError("k_backward_pmf: need 1 <= i, l <= j, l <= n, k <= min(i, l)");
  }
  return binomial_ratio({{j + k - 1, i + l - 1}, {i, k}, {l - 1, k - 1}},
                        {{j - 1, i - 1}, {j, l}});
}

double k_backward_pmf_by_ancestors(int n, std::int64_t i, int k,
                                   std::int64_t j, int l) {
  if (i < 1 || l < 1 || i > j || l > j || l > n || k < 1 || k > std::min<std::int64_t>(i, l)) {
    throw DomainError(
        "k_backward_pmf_by_ancestors: need 1 <= i, l <= j, l <= n, k <= min(i, l)");
  }
  double sum = 0.0;
  for (int u = 0; u <= std::min(k, l); ++u) {
    sum += binomial_ratio(
        {{i, u}, {j - i, l - u}, {i - u, i - k}, {l - 1, l - k}},
        {{j, l}, {l - u + i - 1, i - 1}});
  }
  return sum;
}

double f_pmf_given_k(int n, std::int64_t i, int k, std::int64_t f) {
  check_state(n, i, k, "f_pmf_given_k");
  if (k >= n) throw DomainError("f_pmf_given_k: need k < n");
  if (f <= i) throw DomainError("f_pmf_given_k: need f > i");
  const double ni = static_cast<double>(n + i - 1);
  const double ff = static_cast<double>(f);
  if (k == n - 1) {
    return ni / ((ff + n - 1) * (ff + n - 2));
  }
  // (f-i-1)...(f-i-(n-k)+1) / ((f+n-1)...(f+k-1)): pair factors so the
  // running value stays O(1).
  double v = (n - k) * ni;
  for (int t = 1; t <= n - k - 1; ++t) {
    const double num = static_cast<double>(f - i - t);
    if (num <= 0.0) return 0.0;
    v *= num / (ff + n - t);
  }
  v /= (ff + k) * (ff + k - 1);
  return v;
}

double f_tail_bound(int n, std::int64_t i, std::int64_t f0) {
  if (f0 < 1) return 1.0;
  return std::min(1.0, static_cast<double>(n) * n * static_cast<double>(i) /
                           static_cast<double>(f0));
}

double early_family_size_pmf(int n, std::int64_t i, int k, int s) {
  if (k < 1 || k > n - 1 || s < 1 || s > n - k + 1 || i < k) {
    throw DomainError("early_family_size_pmf: need 1 <= k <= n-1, k <= i, "
                      "1 <= s <= n-k+1");
  }
  return binomial(n - s - 1, n - s - (k - 1)) / binomial(n - 1, n - k);
}

int KChainTrace::k_at(std::int64_t i) const {
  if (i < 1) throw DomainError("k_at: Yule time starts at 1");
  int k = 0;
  for (std::int64_t t : up_times) {
    if (t <= i) ++k;
  }
  return k;
}

std::vector<int> KChainTrace::values() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(i_max));
  for (std::int64_t i = 1; i <= i_max; ++i) out.push_back(k_at(i));
  return out;
}

namespace {

// log prod_{t=a}^{b} (k + t) / (n + t) for k < n, a <= b.
double log_stay(int n, int k, std::int64_t a, std::int64_t b) {
  double s = 0.0;
  for (int u = k; u < n; ++u) {
    s += std::log(static_cast<double>(a + u)) -
         std::log(static_cast<double>(b + 1 + u));
  }
  return s;
}

// log prod_{t=a}^{b} t / (t + kc), i.e. no mark at Yule times a..b.
double log_no_mark(double kc, std::int64_t a, std::int64_t b) {
  if (kc == 0.0) return 0.0;
  using boost::math::tgamma_delta_ratio;
  return std::log(tgamma_delta_ratio(static_cast<double>(b + 1), kc)) -
         std::log(tgamma_delta_ratio(static_cast<double>(a), kc));
}

// Smallest m in [a, hi] with g(m) < target, where g is nonincreasing;
// hi + 1 if there is none.
template <typename G>
std::int64_t first_below(std::int64_t a, std::int64_t hi, double target, G g) {
  if (g(hi) >= target) return hi + 1;
  std::int64_t lo = a - 1;  // g(lo) >= target by convention
  // Exponential search keeps the common short waits cheap.
  std::int64_t step = 1;
  std::int64_t up = a;
  while (up < hi && g(up) >= target) {
    lo = up;
    step = step > (hi - up) / 2 ? hi - up : step * 2;
    up = std::min(hi, up + step);
  }
  while (up - lo > 1) {
    const std::int64_t mid = lo + (up - lo) / 2;
    if (g(mid) >= target) {
      lo = mid;
    } else {
      up = mid;
    }
  }
  return up;
}

// Yule time of the next up-step of the unmarked chain from K_a = k: returns
// the last Yule time m with K_m = k (the chain moves during the transition
// m -> m + 1), clamped to kMaxF.
std::int64_t next_up_step(int n, int k, std::int64_t a, Rng& rng) {
  const double target = std::log(open_uniform(rng));
  const std::int64_t m = first_below(a, kMaxF - 1, target, [&](std::int64_t b) {
    return log_stay(n, k, a, b);
  });
  return std::min(m, kMaxF - 1);
}

}  // namespace

KChainTrace simulate_k_chain(int n, std::int64_t i_max, Rng& rng) {
  if (n < 1) throw DomainError("simulate_k_chain needs n >= 1");
  if (i_max < n) throw DomainError("simulate_k_chain needs i_max >= n");
  KChainTrace tr;
  tr.n = n;
  tr.i_max = i_max;
  tr.up_times.push_back(1);
  std::int64_t i = 1;
  for (int k = 1; k < n; ++k) {
    const std::int64_t m = next_up_step(n, k, i, rng);
    i = m + 1;
    tr.up_times.push_back(i);
  }
  tr.first_full_time = i;
  return tr;
}

KChainTrace simulate_k_chain(int n, std::int64_t i_max, std::uint64_t seed) {
  Rng rng(seed);
  return simulate_k_chain(n, i_max, rng);
}

namespace {

struct Line {
  std::vector<int> leaves;
};

// Geometric number of failures before the first success.
int draw_geometric(double success, Rng& rng) {
  if (success >= 1.0) return 0;
  const double u = open_uniform(rng);
  const double g = std::floor(std::log(u) / std::log1p(-success));
  return g > 1e9 ? 1000000000 : static_cast<int>(g);
}

}  // namespace

MarkedYuleOutcome simulate_marked_yule(const SweepParams& params, Rng& rng) {
  params.validate();
  if (!(params.alpha > std::exp(1.0))) {
    throw DomainError("simulate_marked_yule needs alpha > e");
  }
  const int n = params.n;
  const double c = params.mark_scale();
  const std::int64_t cap = params.yule_cap();

  std::vector<Line> lines(1);
  for (int leaf = 1; leaf <= n; ++leaf) lines[0].leaves.push_back(leaf);
  std::vector<int> tag(static_cast<std::size_t>(n), 0);  // 0: unmarked
  std::vector<bool> tag_early(1, false);
  std::vector<int> tag_size(1, 0);

  MarkedYuleOutcome out;
  int early_marks = 0;
  int first_early_size = 0;
  std::int64_t i = 1;  // current Yule time, its marks not yet drawn
  std::int64_t F = (n == 1) ? 1 : 0;

  auto apply_marks = [&](std::int64_t t, int count) {
    const int k = static_cast<int>(lines.size());
    out.marks_per_yule_time[t] += count;
    for (int m = 0; m < count; ++m) {
      std::uniform_int_distribution<int> pick(0, k - 1);
      const Line& hit = lines[pick(rng)];
      const int id = static_cast<int>(tag_early.size());
      const bool early = k < n;
      tag_early.push_back(early);
      tag_size.push_back(static_cast<int>(hit.leaves.size()));
      for (int leaf : hit.leaves) tag[leaf - 1] = id;
      if (early) {
        if (early_marks == 0) first_early_size = static_cast<int>(hit.leaves.size());
        ++early_marks;
      }
    }
  };

  auto apply_split = [&](std::int64_t t) {
    // Line chosen with weight D - 1; D' uniform in 1..D-1; uniform subset.
    int total = 0;
    for (const auto& ln : lines) total += static_cast<int>(ln.leaves.size()) - 1;
    std::uniform_int_distribution<int> pick(0, total - 1);
    int r = pick(rng);
    std::size_t j = 0;
    for (; j < lines.size(); ++j) {
      const int w = static_cast<int>(lines[j].leaves.size()) - 1;
      if (r < w) break;
      r -= w;
    }
    auto& src = lines[j].leaves;
    const int d = static_cast<int>(src.size());
    std::uniform_int_distribution<int> size_dist(1, d - 1);
    const int moved = size_dist(rng);
    std::shuffle(src.begin(), src.end(), rng);
    Line fresh;
    fresh.leaves.assign(src.end() - moved, src.end());
    src.resize(static_cast<std::size_t>(d - moved));
    std::sort(src.begin(), src.end());
    std::sort(fresh.leaves.begin(), fresh.leaves.end());
    lines.push_back(std::move(fresh));
    if (static_cast<int>(lines.size()) == n) F = t + 1;
  };

  // Marking phase, Yule times 1..cap.
  while (i <= cap) {
    const int k = static_cast<int>(lines.size());
    const double kc = k * c;
    if (kc == 0.0 && k == n) break;
    const double target = std::log(open_uniform(rng));
    auto log_surv = [&](std::int64_t b) {
      double s = log_no_mark(kc, i, b);
      if (k < n) s += log_stay(n, k, i, b);
      return s;
    };
    const std::int64_t m = first_below(i, cap, target, log_surv);
    if (m > cap) {
      i = cap + 1;
      break;
    }
    const double pm = kc / (static_cast<double>(m) + kc);
    const double ps = static_cast<double>(n - k) / static_cast<double>(n + m);
    const double w_mark = pm * (1.0 - ps);
    const double w_split = (1.0 - pm) * ps;
    const double w_both = pm * ps;
    const double u = open_uniform(rng) * (w_mark + w_split + w_both);
    const bool mark = u < w_mark || u >= w_mark + w_split;
    const bool split = u >= w_mark;
    if (mark) {
      // Given at least one mark, the count is 1 + Geometric(success q).
      const double q = static_cast<double>(m) / (static_cast<double>(m) + kc);
      apply_marks(m, 1 + draw_geometric(q, rng));
    }
    if (split) apply_split(m);
    i = m + 1;
  }

  // Past floor(alpha) no marks fall; only the time F is still open.
  if (F == 0) {
    std::int64_t t = std::max<std::int64_t>(i, cap + 1);
    for (int k = static_cast<int>(lines.size()); k < n; ++k) {
      t = next_up_step(n, k, t, rng) + 1;
      if (t >= kMaxF) {
        t = kMaxF;
        break;
      }
    }
    F = t;
  }
  out.F_observed = F;

  std::map<int, Block> by_tag;
  for (int leaf = 1; leaf <= n; ++leaf) {
    const int id = tag[leaf - 1];
    Block& b = by_tag[id];
    b.members.push_back(leaf);
    b.label = id == 0 ? FamilyLabel::nonrecombinant
                      : (tag_early[id] ? FamilyLabel::early : FamilyLabel::late);
  }
  std::vector<Block> blocks;
  for (auto& [id, b] : by_tag) blocks.push_back(std::move(b));
  out.partition = LabeledPartition(n, std::move(blocks));
  out.stats = partition_stats(out.partition);
  out.stats.M = early_marks;
  out.stats.S = first_early_size;
  return out;
}

MarkedYuleOutcome simulate_marked_yule(const SweepParams& params,
                                       std::uint64_t seed) {
  Rng rng(seed);
  return simulate_marked_yule(params, rng);
}

}  // namespace sweepsf
