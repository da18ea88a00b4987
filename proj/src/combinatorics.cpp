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


#include "sweepsf/combinatorics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "json.hpp"
#include "sweepsf/errors.hpp"
#include "sweepsf/numerics.hpp"

namespace sweepsf {

std::string u128_to_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

namespace {

bool binomial_checked(std::int64_t n, std::int64_t k, u128* out) {
  if (k < 0 || k > n) {
    *out = 0;
    return true;
  }
  k = std::min(k, n - k);
  u128 c = 1;
  for (std::int64_t t = 1; t <= k; ++t) {
    // c * (n - k + t) is divisible by t; divide first by the gcd to keep the
    // intermediate small.
    u128 num = static_cast<u128>(n - k + t);
    u128 den = static_cast<u128>(t);
    u128 a = c, b = den;
    while (b != 0) {
      u128 r = a % b;
      a = b;
      b = r;
    }
    const u128 g = a;
    const u128 c_red = c / g;
    den /= g;
    num /= den;  // den now divides num
    u128 next;
    if (__builtin_mul_overflow(c_red, num, &next)) return false;
    c = next;
  }
  *out = c;
  return true;
}

}  // namespace

u128 binomial_exact(std::int64_t n, std::int64_t k) {
  u128 c;
  if (!binomial_checked(n, k, &c)) {
    throw std::overflow_error("C(" + std::to_string(n) + "," +
                              std::to_string(k) + ") exceeds 128 bits");
  }
  return c;
}

double log_binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  const double nn = static_cast<double>(n);
  const double kk = static_cast<double>(k);
  return std::lgamma(nn + 1.0) - std::lgamma(kk + 1.0) -
         std::lgamma(nn - kk + 1.0);
}

double binomial(std::int64_t n, std::int64_t k) {
  if (k < 0) return 0.0;
  if (k == 0) return 1.0;
  if (n < 0) {
    const double v = binomial(k - n - 1, k);
    return (k % 2 == 0) ? v : -v;
  }
  if (k > n) return 0.0;
  u128 c;
  if (binomial_checked(n, k, &c)) return static_cast<double>(c);
  const std::int64_t kk = std::min(k, n - k);
  if (kk <= 64) {
    long double v = 1.0L;
    for (std::int64_t t = 1; t <= kk; ++t) {
      v *= static_cast<long double>(n - kk + t) / static_cast<long double>(t);
    }
    return static_cast<double>(v);
  }
  return std::exp(log_binomial(n, k));
}

u128 bose_einstein_count(std::int64_t i, std::int64_t n) {
  if (i < 1 || n < 0) {
    throw DomainError("bose_einstein_count needs i >= 1 and n >= 0");
  }
  return binomial_exact(n + i - 1, n);
}

u128 positive_occupancy_count(std::int64_t k, std::int64_t n) {
  if (k < 1 || n < 0) {
    throw DomainError("positive_occupancy_count needs k >= 1 and n >= 0");
  }
  if (n == 0) return 0;
  return binomial_exact(n - 1, n - k);
}

std::vector<OccupancyVector> bose_einstein_enumerate(int i, int n) {
  if (i < 1 || n < 0) {
    throw DomainError("bose_einstein_enumerate needs i >= 1 and n >= 0");
  }
  u128 count;
  if (!binomial_checked(static_cast<std::int64_t>(n) + i - 1, n, &count) ||
      count > kMaxEnumeration) {
    throw SizeError("bose_einstein_enumerate(" + std::to_string(i) + "," +
                    std::to_string(n) + ") exceeds the enumeration limit");
  }
  std::vector<OccupancyVector> out;
  out.reserve(static_cast<std::size_t>(count));
  OccupancyVector v(static_cast<std::size_t>(i), 0);
  // Depth-first over boxes, smallest count first, last box takes the rest.
  auto rec = [&](auto&& self, int box, int left) -> void {
    if (box == i - 1) {
      v[box] = left;
      out.push_back(v);
      return;
    }
    for (int c = 0; c <= left; ++c) {
      v[box] = c;
      self(self, box + 1, left - c);
    }
  };
  rec(rec, 0, n);
  return out;
}

double hypergeometric_pmf(int e, int s, int n, int l) {
  if (n < 0 || l < 0 || l > n || s < 0 || s > n) return 0.0;
  const int draws = n - l;
  if (e < 0 || e > s || e > draws || draws - e > n - s) return 0.0;
  return binomial(s, e) * binomial(n - s, draws - e) / binomial(n, draws);
}

namespace {

constexpr std::int64_t kDirectHarmonic = 1000000;

// psi(b + 1) - psi(a) for a >= kDirectHarmonic by the asymptotic expansion
// of the digamma function; the logarithmic part goes through log1p.
double harmonic_tail(std::int64_t a, std::int64_t b) {
  const double x = static_cast<double>(a);
  const double y = static_cast<double>(b) + 1.0;
  const double lg = std::log1p((y - x) / x);
  const double ix = 1.0 / x, iy = 1.0 / y;
  const double ix2 = ix * ix, iy2 = iy * iy;
  return lg - 0.5 * (iy - ix) - (iy2 - ix2) / 12.0 +
         (iy2 * iy2 - ix2 * ix2) / 120.0 -
         (iy2 * iy2 * iy2 - ix2 * ix2 * ix2) / 252.0;
}

}  // namespace

double harmonic_partial_sum(std::int64_t a, std::int64_t b) {
  if (a < 1) throw DomainError("harmonic_partial_sum needs a >= 1");
  if (a > b) return 0.0;
  const std::int64_t direct_end = std::min(b, std::max(a, kDirectHarmonic) - 1);
  NeumaierSum sum;
  // Summing from the small terms up keeps the compensation effective.
  for (std::int64_t i = direct_end; i >= a; --i) {
    sum += 1.0 / static_cast<double>(i);
  }
  if (b > direct_end) {
    sum += harmonic_tail(std::max(a, direct_end + 1), b);
  }
  return sum.value();
}

double harmonic_number(std::int64_t m) {
  return m <= 0 ? 0.0 : harmonic_partial_sum(1, m);
}

double inverse_be_sum(int n, std::int64_t N) {
  NeumaierSum sum;
  for (std::int64_t i = N; i >= 1; --i) {
    // 1 / C(n+i-1, n) = prod_{t=1}^{n} t / (i - 1 + t)
    double v = 1.0;
    for (int t = 1; t <= n; ++t) {
      v *= static_cast<double>(t) / static_cast<double>(i - 1 + t);
    }
    sum += v;
  }
  return sum.value();
}

double a_sum(int n, int s, std::int64_t N) {
  if (s < 1 || s > n) throw DomainError("a_sum needs 1 <= s <= n");
  const int top = n - s;
  NeumaierSum sum;
  for (std::int64_t i = N; i >= 1; --i) {
    // C(top + i - 2, top) / C(n + i - 1, n), both as rising products.
    double num;
    if (top == 0) {
      num = 1.0;
    } else if (i == 1) {
      num = 0.0;  // C(top - 1, top) = 0 for top >= 1
    } else {
      num = 1.0;
      for (int t = 1; t <= top; ++t) {
        num *= static_cast<double>(i - 2 + t) / static_cast<double>(t);
      }
    }
    if (num == 0.0) continue;
    double inv = 1.0;
    for (int t = 1; t <= n; ++t) {
      inv *= static_cast<double>(t) / static_cast<double>(i - 1 + t);
    }
    sum += num * inv;
  }
  return sum.value();
}

double a_mn_sum(int m, int n, std::int64_t N) {
  if (m < 1 || n < 1) throw DomainError("a_mn_sum needs m, n >= 1");
  NeumaierSum sum;
  for (std::int64_t i = N; i >= m; --i) {
    double v = 1.0;
    const int common = std::min(m - 1, n);
    int t = 0;
    // Pair numerator and denominator factors to keep the running value O(1).
    for (; t < common; ++t) {
      v *= static_cast<double>(i - 1 - t) / static_cast<double>(i + n - 1 - t);
    }
    for (int u = t; u < m - 1; ++u) v *= static_cast<double>(i - 1 - u);
    for (int u = t; u < n; ++u) v /= static_cast<double>(i + n - 1 - u);
    sum += v;
  }
  return sum.value();
}

bool IdentityReport::all_pass() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  for (const auto& c : constants) {
    if (!c.bounded) return false;
  }
  return true;
}

std::string IdentityReport::to_json() const {
  nlohmann::json j;
  j["n_max"] = n_max;
  j["alpha_grid"] = alpha_grid;
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks) {
    j["checks"].push_back({{"name", c.name},
                           {"max_deviation", c.max_deviation},
                           {"tolerance", c.tolerance},
                           {"pass", c.pass}});
  }
  j["fitted_constants"] = nlohmann::json::array();
  for (const auto& c : constants) {
    j["fitted_constants"].push_back({{"name", c.name},
                                     {"alphas", c.alphas},
                                     {"alpha_times_deviation", c.scaled_deviation},
                                     {"C", c.constant},
                                     {"bounded", c.bounded}});
  }
  j["all_pass"] = all_pass();
  return j.dump(2);
}

namespace {

double rel_dev(double a, double b) {
  return std::fabs(a - b) / std::max({1.0, std::fabs(a), std::fabs(b)});
}

double factorial(int m) {
  double f = 1.0;
  for (int t = 2; t <= m; ++t) f *= t;
  return f;
}

// alpha * |dev| counts as bounded when, along a grid of decades, no rise
// exceeds half the previous change. A log(alpha) factor adds a constant per
// decade and fails this. With two points the ratio is held to kGrowthFactor.
constexpr double kGrowthFactor = 1.1;
constexpr double kIncrementRatio = 0.5;

class ConstantFitter {
 public:
  ConstantFitter(std::string name, const std::vector<double>& grid)
      : fc_{std::move(name), grid, std::vector<double>(grid.size(), 0.0)} {}
  void record(std::size_t k, double alpha, double dev) {
    fc_.scaled_deviation[k] =
        std::max(fc_.scaled_deviation[k], alpha * std::fabs(dev));
  }
  FittedConstant finish() {
    fc_.constant = 0.0;
    fc_.bounded = true;
    const auto& d = fc_.scaled_deviation;
    for (double v : d) fc_.constant = std::max(fc_.constant, v);
    if (d.size() == 2) fc_.bounded = d[1] <= kGrowthFactor * d[0] + 1e-9;
    for (std::size_t k = 2; k < d.size(); ++k) {
      const double rise = d[k] - d[k - 1];
      if (rise > kIncrementRatio * std::fabs(d[k - 1] - d[k - 2]) + 1e-9) {
        fc_.bounded = false;
      }
    }
    return fc_;
  }

 private:
  FittedConstant fc_;
};

}  // namespace

IdentityReport identity_suite(int n_max, const std::vector<double>& alpha_grid) {
  if (n_max < 2 || n_max > 8) {
    throw DomainError("identity_suite needs 2 <= n_max <= 8");
  }
  if (alpha_grid.empty() || !std::is_sorted(alpha_grid.begin(), alpha_grid.end())) {
    throw DomainError("identity_suite needs a nonempty ascending alpha grid");
  }
  for (double a : alpha_grid) {
    if (!(a >= 2.0 * n_max)) {
      throw DomainError("identity_suite needs alpha >= 2 n_max");
    }
  }
  IdentityReport rep;
  rep.n_max = n_max;
  rep.alpha_grid = alpha_grid;
  constexpr double kTol = 1e-10;

  double dev_tele = 0, dev_shift = 0, dev_rec = 0, dev_unrolled = 0;
  double dev_a1 = 0, dev_nan = 0;
  ConstantFitter fit_inv("sum 1/C(n+i-1,n) -> n/(n-1)", alpha_grid);
  ConstantFitter fit_a("A(n,s,alpha) -> n/((s-1)s), 2<=s<=n-1", alpha_grid);
  ConstantFitter fit_a1("A(n,1,alpha) -> 1-n+n*sum_{n+1}^{alpha} 1/i",
                        alpha_grid);
  ConstantFitter fit_amn("A_{m,n} -> ((m-1)!)^2 (n-m-1)!/((n-1)!)^2, m<n",
                         alpha_grid);
  ConstantFitter fit_an(
      "A_n -> 1/n-1+sum_{n+1}^{alpha} 1/i-sum_{2}^{n-1} 1/i", alpha_grid);
  ConstantFitter fit_s1("s=1 sum -> n*sum_{2}^{n-1} 1/i", alpha_grid);

  for (std::size_t g = 0; g < alpha_grid.size(); ++g) {
    const double alpha = alpha_grid[g];
    const auto N = static_cast<std::int64_t>(std::floor(alpha));
    // A_{m,n} table for 1 <= m <= n <= n_max.
    std::vector<std::vector<double>> amn(
        n_max + 1, std::vector<double>(n_max + 1, 0.0));
    for (int n = 1; n <= n_max; ++n) {
      for (int m = 1; m <= n; ++m) amn[m][n] = a_mn_sum(m, n, N);
    }
    dev_a1 = std::max(dev_a1, rel_dev(amn[1][1], harmonic_number(N)));

    for (int n = 2; n <= n_max; ++n) {
      // Telescoped closed form of sum 1/C(n+i-1,n).
      const double inv = inverse_be_sum(n, N);
      double prod = 1.0;
      for (int t = 1; t <= n - 1; ++t) {
        prod *= static_cast<double>(t) / static_cast<double>(N + t);
      }
      const double closed =
          static_cast<double>(n) / (n - 1) - static_cast<double>(n) / (n - 1) * prod;
      dev_tele = std::max(dev_tele, rel_dev(inv, closed));
      dev_tele = std::max(dev_tele, rel_dev(inv, a_sum(n, n, N)));
      fit_inv.record(g, alpha, inv - static_cast<double>(n) / (n - 1));

      for (int s = 1; s <= n - 1; ++s) {
        // Index-shifted form: the i = 1 summand vanishes for s < n.
        const int top = n - s;
        NeumaierSum shifted;
        for (std::int64_t i = N - 1; i >= 1; --i) {
          double v = 1.0;
          for (int t = 1; t <= top; ++t) {
            v *= static_cast<double>(i - 1 + t) / static_cast<double>(t);
          }
          for (int t = 1; t <= n; ++t) {
            v *= static_cast<double>(t) / static_cast<double>(i + t);
          }
          shifted += v;
        }
        const double a = a_sum(n, s, N);
        dev_shift = std::max(dev_shift, rel_dev(a, shifted.value()));
        if (s >= 2) {
          fit_a.record(g, alpha, a - static_cast<double>(n) / ((s - 1) * s));
        } else {
          const double approx =
              1.0 - n + n * harmonic_partial_sum(n + 1, N);
          fit_a1.record(g, alpha, a - approx);
        }
      }

      // One-step recursion and its unrolled form, 2 <= m <= n.
      for (int m = 2; m <= n; ++m) {
        const double rhs = amn[m - 1][n - 1] - (m + n - 2) * amn[m - 1][n];
        dev_rec = std::max(dev_rec, rel_dev(amn[m][n], rhs));
        double unrolled = amn[1][n - m + 1];
        for (int k = 0; k <= m - 2; ++k) {
          unrolled -= (m + n - 2 * k - 2) * amn[m - 1 - k][n - k];
        }
        dev_unrolled = std::max(dev_unrolled, rel_dev(amn[m][n], unrolled));
      }
      for (int m = 1; m < n; ++m) {
        const double lim = factorial(m - 1) * factorial(m - 1) *
                           factorial(n - m - 1) /
                           (factorial(n - 1) * factorial(n - 1));
        fit_amn.record(g, alpha, amn[m][n] - lim);
      }
      const double an_approx = 1.0 / n - 1.0 + harmonic_partial_sum(n + 1, N) -
                               harmonic_partial_sum(2, n - 1);
      fit_an.record(g, alpha, amn[n][n] - an_approx);

      // sum C(i-1,n-1)/C(n+i-1,n) = n A_n.
      NeumaierSum direct;
      NeumaierSum s1;
      for (std::int64_t i = N; i >= 1; --i) {
        const double denom = binomial(n + i - 1, n);
        const double c2 =
            (i >= n) ? binomial(i - 1, n - 1) / denom : 0.0;
        direct += c2;
        s1 += binomial(n + i - 3, n - 1) / denom - c2;
      }
      dev_nan = std::max(dev_nan, rel_dev(direct.value(), n * amn[n][n]));
      fit_s1.record(g, alpha, s1.value() - n * harmonic_partial_sum(2, n - 1));
    }
  }

  auto add = [&](const std::string& name, double dev) {
    rep.checks.push_back({name, dev, kTol, dev <= kTol});
  };
  add("telescoped sum 1/C(n+i-1,n) and A(n,n,alpha)", dev_tele);
  add("A(n,s,alpha) index shift", dev_shift);
  add("A_{m,n} = A_{m-1,n-1} - (m+n-2) A_{m-1,n}", dev_rec);
  add("A_{m,n} unrolled recursion", dev_unrolled);
  add("A_{1,1} = harmonic number", dev_a1);
  add("sum C(i-1,n-1)/C(n+i-1,n) = n A_n", dev_nan);
  rep.constants.push_back(fit_inv.finish());
  rep.constants.push_back(fit_a.finish());
  rep.constants.push_back(fit_a1.finish());
  rep.constants.push_back(fit_amn.finish());
  rep.constants.push_back(fit_an.finish());
  rep.constants.push_back(fit_s1.finish());
  return rep;
}

}  // namespace sweepsf
