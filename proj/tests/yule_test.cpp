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
#include <map>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sweepsf/errors.hpp"
#include "sweepsf/formula.hpp"
#include "sweepsf/rng.hpp"

namespace sweepsf {
namespace {

using oracle::Rational;
using oracle::to_double;

TEST(KChain, MarginalMatchesForwardDp) {
  for (int n = 1; n <= 6; ++n) {
    const auto dp = oracle::k_chain_dp(n, 16);
    for (std::int64_t i = 1; i <= 16; ++i) {
      double total = 0.0;
      for (int k = 1; k <= std::min<std::int64_t>(i, n); ++k) {
        EXPECT_NEAR(k_pmf(n, i, k), to_double(dp[i][k]), 1e-15) << n << " " << i << " " << k;
        total += k_pmf(n, i, k);
      }
      EXPECT_NEAR(total, 1.0, 1e-14);
    }
  }
}

TEST(KChain, UpProbability) {
  EXPECT_DOUBLE_EQ(k_up_probability(5, 3, 2), 3.0 / 8.0);
  EXPECT_EQ(k_up_probability(4, 10, 4), 0.0);
  EXPECT_THROW(k_up_probability(4, 2, 3), DomainError);
}

TEST(KChain, MultistepMatchesChain) {
  for (int n = 2; n <= 5; ++n) {
    for (std::int64_t i = 1; i <= 7; ++i) {
      for (std::int64_t j = i; j <= 9; ++j) {
        for (int k = 1; k <= std::min<std::int64_t>(i, n); ++k) {
          for (int l = k; l <= std::min<std::int64_t>(j, n); ++l) {
            EXPECT_NEAR(k_multistep_pmf(n, i, k, j, l),
                        to_double(oracle::k_chain_transition(n, i, k, j, l)), 1e-15);
          }
        }
      }
    }
  }
  EXPECT_EQ(k_multistep_pmf(4, 3, 2, 3, 2), 1.0);
}

TEST(KChain, BackwardLawIsBayes) {
  for (int n = 2; n <= 5; ++n) {
    const auto dp = oracle::k_chain_dp(n, 10);
    for (std::int64_t i = 1; i <= 10; ++i) {
      for (std::int64_t j = i; j <= 10; ++j) {
        for (int l = 1; l <= std::min<std::int64_t>(j, n); ++l) {
          double total = 0.0;
          for (int k = 1; k <= std::min<std::int64_t>(i, l); ++k) {
            const Rational want =
                dp[i][k] * oracle::k_chain_transition(n, i, k, j, l) / dp[j][l];
            EXPECT_NEAR(k_backward_pmf(n, i, k, j, l), to_double(want), 1e-14);
            EXPECT_NEAR(k_backward_pmf_by_ancestors(n, i, k, j, l), to_double(want), 1e-14);
            total += k_backward_pmf(n, i, k, j, l);
          }
          EXPECT_NEAR(total, 1.0, 1e-13);
        }
      }
    }
  }
}

TEST(FLaw, PmfGivenKMatchesChain) {
  for (int n = 2; n <= 5; ++n) {
    for (std::int64_t i = 1; i <= 6; ++i) {
      for (int k = 1; k <= std::min<std::int64_t>(i, n - 1); ++k) {
        for (std::int64_t f = i + 1; f <= 14; ++f) {
          const Rational want =
              (f - 1 >= i) ? oracle::k_chain_transition(n, i, k, f - 1, n - 1) *
                                 Rational(1, n + f - 1)
                           : Rational(0);
          EXPECT_NEAR(f_pmf_given_k(n, i, k, f), to_double(want), 1e-15);
        }
      }
    }
  }
}

TEST(FLaw, TailBoundDominates) {
  for (int n = 2; n <= 5; ++n) {
    for (std::int64_t i : {1, 3, 10}) {
      for (int k = 1; k <= std::min<std::int64_t>(i, n - 1); ++k) {
        for (std::int64_t f0 : {i + 1, 5 * i + 5, 100 * i}) {
          double head = 0.0;
          for (std::int64_t f = i + 1; f <= f0; ++f) head += f_pmf_given_k(n, i, k, f);
          EXPECT_LE(1.0 - head, f_tail_bound(n, i, f0) + 1e-12);
        }
      }
    }
  }
}

TEST(EarlyFamily, MatchesCompositionCount) {
  for (int n = 2; n <= 7; ++n) {
    for (int k = 1; k <= n - 1; ++k) {
      std::map<int, int> count;
      int total = 0;
      oracle::for_each_occupancy(k, n, [&](const std::vector<int>& v) {
        if (std::find(v.begin(), v.end(), 0) != v.end()) return;
        ++count[v[0]];
        ++total;
      });
      for (int s = 1; s <= n - k + 1; ++s) {
        EXPECT_NEAR(early_family_size_pmf(n, 10, k, s),
                    static_cast<double>(count[s]) / total, 1e-15);
      }
    }
  }
}

TEST(KChainSim, TraceIsConsistent) {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const KChainTrace t = simulate_k_chain(4, 50, seed);
    ASSERT_EQ(t.up_times.size(), 4u);
    EXPECT_EQ(t.up_times.front(), 1);
    EXPECT_TRUE(std::is_sorted(t.up_times.begin(), t.up_times.end()));
    EXPECT_EQ(t.first_full_time, t.up_times.back());
    EXPECT_EQ(t.k_at(t.first_full_time), 4);
    EXPECT_EQ(t.k_at(t.first_full_time - 1), 3);
    const auto v = t.values();
    ASSERT_EQ(v.size(), 50u);
    EXPECT_EQ(v.front(), 1);
    for (std::size_t a = 1; a < v.size(); ++a) {
      EXPECT_TRUE(v[a] == v[a - 1] || v[a] == v[a - 1] + 1);
    }
  }
}

TEST(KChainSim, Deterministic) {
  EXPECT_EQ(simulate_k_chain(5, 20, 77).up_times, simulate_k_chain(5, 20, 77).up_times);
}

TEST(KChainSim, MarginalAtFixedTime) {
  const int n = 3, reps = 40000;
  const std::int64_t i = 6;
  std::vector<int> hits(n + 1, 0);
  for (int r = 0; r < reps; ++r) ++hits[simulate_k_chain(n, i, derive_seed(3, r)).k_at(i)];
  for (int k = 1; k <= n; ++k) {
    const double p = k_pmf(n, i, k);
    const double se = std::sqrt(p * (1 - p) / reps);
    EXPECT_NEAR(static_cast<double>(hits[k]) / reps, p, 5 * se) << k;
  }
}

TEST(MarkedYule, NoRecombinationGivesOneBlock) {
  const SweepParams p{1e4, 0.0, 5};
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto out = simulate_marked_yule(p, seed);
    EXPECT_EQ(out.stats.n_nonrec, 5);
    EXPECT_EQ(out.stats.M, 0);
    EXPECT_GE(out.F_observed, 5);
  }
}

TEST(MarkedYule, InvariantsAndDeterminism) {
  const SweepParams p{1e3, 1.0, 6};
  int early_blocks_max = 0;
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    const auto out = simulate_marked_yule(p, seed);
    const auto& st = out.stats;
    EXPECT_EQ(st.L + st.E + st.n_nonrec, 6);
    EXPECT_EQ(st.exceptional_count, 0);
    int early = 0;
    for (const auto& b : out.partition.blocks()) {
      if (b.label == FamilyLabel::late) EXPECT_EQ(b.members.size(), 1u);
      early += b.label == FamilyLabel::early;
    }
    early_blocks_max = std::max(early_blocks_max, early);
    if (st.M == 0) {
      EXPECT_EQ(st.E, 0);
      EXPECT_EQ(st.S, 0);
    } else {
      EXPECT_GE(st.S, 1);
    }
  }
  EXPECT_GE(early_blocks_max, 1);
  const auto a = simulate_marked_yule(p, 99), b = simulate_marked_yule(p, 99);
  EXPECT_EQ(a.partition.to_string(), b.partition.to_string());
  EXPECT_EQ(a.F_observed, b.F_observed);
}

TEST(MarkedYule, FMatchesClosedForm) {
  const SweepParams p{1e4, 0.5, 3};
  const int reps = 20000;
  std::map<std::int64_t, int> hist;
  for (int r = 0; r < reps; ++r) ++hist[simulate_marked_yule(p, derive_seed(8, r)).F_observed];
  double acc = 0.0, dev = 0.0;
  for (const auto& [f, c] : hist) {
    acc += static_cast<double>(c) / reps;
    dev = std::max(dev, std::fabs(acc - f_cdf(3, f)));
  }
  EXPECT_LT(dev, 1.36 / std::sqrt(static_cast<double>(reps)) * 1.5);
}

TEST(MarkedYule, RejectsSmallAlpha) {
  EXPECT_THROW(simulate_marked_yule(SweepParams{2.0, 0.1, 3}, 1), DomainError);
}

}  // namespace
}  // namespace sweepsf
