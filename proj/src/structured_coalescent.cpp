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


#include "sweepsf/structured_coalescent.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "sweepsf/errors.hpp"
#include "sweepsf/numerics.hpp"

namespace sweepsf {

namespace {

void check_path(const SweepParams& params, const SweepPath& path) {
  params.validate();
  path.check_invariants();
  if (path.alpha != params.alpha) {
    throw DomainError("sweep path was generated with alpha = " +
                      format_double(path.alpha) + ", not " +
                      format_double(params.alpha));
  }
}

struct Lineage {
  std::vector<int> leaves;
  Background bg = Background::B;
  bool ever_left = false;
  bool left_before_first = false;
};

class StructuredRun {
 public:
  StructuredRun(const SweepParams& params, std::uint64_t seed)
      : n_(params.n), rho_(params.rho()), alpha_(params.alpha), rng_(seed) {
    for (int leaf = 1; leaf <= n_; ++leaf) {
      Lineage l;
      l.leaves = {leaf};
      lin_.push_back(std::move(l));
    }
  }

  void interval(double x, double dt) {
    if (x > 1.0 - 1.0 / (10.0 * alpha_)) merge_all(Background::b);
    if (x <= 0.0) merge_all(Background::B);
    double left = dt;
    std::uint64_t steps = 0;
    while (left > 0.0) {
      count();
      const double r_out = (x < 1.0) ? nB_ * (1.0 - x) * rho_ : 0.0;
      const double r_back = nb_ * x * rho_;
      const double r_cB = (x > 0.0) ? nB_ * (nB_ - 1) / 2.0 * 2.0 / x : 0.0;
      const double r_cb = (x < 1.0) ? nb_ * (nb_ - 1) / 2.0 * 2.0 / (1.0 - x) : 0.0;
      // Until the selective-locus genealogy of the sample first coalesces,
      // its pairs not both carried by B walkers merge without touching
      // the neutral lineages.
      const double r_tree =
          (!first_done_ && x > 0.0)
              ? (n_ * (n_ - 1) - nB_ * (nB_ - 1)) / 2.0 * 2.0 / x
              : 0.0;
      const double total = r_out + r_back + r_cB + r_cb + r_tree;
      if (total <= 0.0) return;
      const double h = std::min(left, kMaxRateStep / total);
      left -= h;
      if (++steps > kMaxSubsteps) {
        throw StepSizeError("structured coalescent needs more than " +
                            std::to_string(kMaxSubsteps) +
                            " substeps in one grid interval; refine dt");
      }
      if (open_uniform(rng_) >= total * h) continue;
      double u = open_uniform(rng_) * total;
      if ((u -= r_out) < 0.0) {
        flip(Background::B);
        if (x > 1.0 - 1.0 / (10.0 * alpha_)) merge_all(Background::b);
      } else if ((u -= r_back) < 0.0) {
        flip(Background::b);
      } else if ((u -= r_cB) < 0.0) {
        coalesce(Background::B);
      } else if ((u -= r_cb) < 0.0) {
        coalesce(Background::b);
      } else {
        first_done_ = true;
      }
    }
  }

  StructuredOutcome finish() {
    // X_0 = 0: the B lineages share the single founder.
    merge_all(Background::B);
    StructuredOutcome out;
    std::vector<Block> blocks;
    for (const auto& l : lin_) {
      Block b;
      b.members = l.leaves;
      if (l.bg == Background::b) {
        b.label = l.left_before_first ? FamilyLabel::late : FamilyLabel::early;
      } else {
        b.label = l.ever_left ? FamilyLabel::exceptional
                              : FamilyLabel::nonrecombinant;
      }
      blocks.push_back(std::move(b));
    }
    out.partition = LabeledPartition(n_, std::move(blocks));
    out.stats = partition_stats(out.partition);
    out.stats.M = early_events_;
    out.stats.S = early_size_;
    out.back_recombinations = back_;
    out.b_coalescences = b_coal_;
    out.coalescences = coal_;
    return out;
  }

 private:
  void count() {
    nB_ = nb_ = 0;
    for (const auto& l : lin_) (l.bg == Background::B ? nB_ : nb_) += 1;
  }

  // Index of the r-th lineage in background g.
  std::size_t nth(Background g, int r) const {
    for (std::size_t k = 0; k < lin_.size(); ++k) {
      if (lin_[k].bg == g && r-- == 0) return k;
    }
    return lin_.size();
  }

  int uniform(int m) {
    std::uniform_int_distribution<int> d(0, m - 1);
    return d(rng_);
  }

  void flip(Background from) {
    const int cnt = from == Background::B ? nB_ : nb_;
    Lineage& l = lin_[nth(from, uniform(cnt))];
    if (from == Background::B) {
      l.bg = Background::b;
      l.ever_left = true;
      if (!first_done_) {
        l.left_before_first = true;
      } else {
        ++early_events_;
        early_size_ = static_cast<int>(l.leaves.size());
      }
    } else {
      l.bg = Background::B;
      ++back_;
    }
  }

  void merge(std::size_t a, std::size_t b) {
    if (a > b) std::swap(a, b);
    Lineage& keep = lin_[a];
    Lineage& gone = lin_[b];
    keep.leaves.insert(keep.leaves.end(), gone.leaves.begin(), gone.leaves.end());
    keep.ever_left = keep.ever_left || gone.ever_left;
    keep.left_before_first = keep.left_before_first || gone.left_before_first;
    if (keep.bg == Background::b) {
      ++b_coal_;
    } else {
      first_done_ = true;
    }
    ++coal_;
    lin_.erase(lin_.begin() + static_cast<std::ptrdiff_t>(b));
  }

  void coalesce(Background g) {
    const int cnt = g == Background::B ? nB_ : nb_;
    const int r1 = uniform(cnt);
    int r2 = uniform(cnt - 1);
    if (r2 >= r1) ++r2;
    merge(nth(g, r1), nth(g, r2));
  }

  void merge_all(Background g) {
    for (;;) {
      count();
      const int cnt = g == Background::B ? nB_ : nb_;
      if (cnt < 2) return;
      merge(nth(g, 0), nth(g, 1));
    }
  }

  int n_;
  double rho_;
  double alpha_;
  Rng rng_;
  std::vector<Lineage> lin_;
  int nB_ = 0, nb_ = 0;
  int back_ = 0, b_coal_ = 0, coal_ = 0;
  bool first_done_ = false;
  int early_events_ = 0, early_size_ = 0;
};

}  // namespace

StructuredOutcome simulate_structured_coalescent(const SweepParams& params,
                                                 const SweepPath& path,
                                                 std::uint64_t seed) {
  check_path(params, path);
  StructuredRun run(params, seed);
  const auto& xs = path.xs;
  for (std::size_t k = xs.size() - 1; k-- > 0;) {
    run.interval(0.5 * (xs[k] + xs[k + 1]), path.dt);
  }
  return run.finish();
}

LabeledPartition simulate_structured_partition(const SweepParams& params,
                                               const SweepPath& path,
                                               std::uint64_t seed) {
  return simulate_structured_coalescent(params, path, seed).partition;
}

MarkedCoalescentOutcome simulate_marked_coalescent(const SweepParams& params,
                                                   const SweepPath& path,
                                                   std::uint64_t seed) {
  check_path(params, path);
  const int n = params.n;
  const double rho = params.rho();
  Rng rng(seed);
  // Each line keeps the leaves below it that no mark has cut off yet, and
  // the number of all leaves below it.
  std::vector<std::vector<int>> active;
  std::vector<int> below(static_cast<std::size_t>(n), 1);
  for (int leaf = 1; leaf <= n; ++leaf) active.push_back({leaf});
  std::vector<Block> blocks;
  MarkedCoalescentOutcome out;
  int early = 0, early_size = 0;
  auto uniform = [&](int m) {
    std::uniform_int_distribution<int> d(0, m - 1);
    return d(rng);
  };
  auto merge = [&](int a, int b) {
    if (a > b) std::swap(a, b);
    active[a].insert(active[a].end(), active[b].begin(), active[b].end());
    active.erase(active.begin() + b);
    below[a] += below[b];
    below.erase(below.begin() + b);
  };
  const auto& xs = path.xs;
  for (std::size_t k = xs.size() - 1; k-- > 0;) {
    const double x = 0.5 * (xs[k] + xs[k + 1]);
    if (x <= 0.0) {
      while (active.size() > 1) merge(0, 1);
    }
    double left = path.dt;
    std::uint64_t steps = 0;
    while (left > 0.0) {
      const int lines = static_cast<int>(active.size());
      const double r_mark = lines * (1.0 - x) * rho;
      const double r_coal = (x > 0.0) ? lines * (lines - 1) / x : 0.0;
      const double total = r_mark + r_coal;
      if (total <= 0.0) break;
      const double h = std::min(left, kMaxRateStep / total);
      left -= h;
      if (++steps > kMaxSubsteps) {
        throw StepSizeError("marked coalescent needs more than " +
                            std::to_string(kMaxSubsteps) +
                            " substeps in one grid interval; refine dt");
      }
      if (open_uniform(rng) >= total * h) continue;
      if (open_uniform(rng) * total < r_mark) {
        const int line = uniform(lines);
        auto& hit = active[line];
        ++out.marks;
        const bool is_early = lines < n;
        if (is_early) {
          ++early;
          early_size = below[line];
        }
        if (!hit.empty()) {
          Block b;
          b.members = hit;
          b.label = is_early ? FamilyLabel::early : FamilyLabel::late;
          blocks.push_back(std::move(b));
          hit.clear();
        }
      } else {
        const int a = uniform(lines);
        int b = uniform(lines - 1);
        if (b >= a) ++b;
        merge(a, b);
      }
    }
  }
  while (active.size() > 1) merge(0, 1);
  if (!active.front().empty()) {
    Block b;
    b.members = active.front();
    b.label = FamilyLabel::nonrecombinant;
    blocks.push_back(std::move(b));
  }
  out.partition = LabeledPartition(n, std::move(blocks));
  out.stats = partition_stats(out.partition);
  out.stats.M = early;
  out.stats.S = early_size;
  return out;
}

LabeledPartition simulate_marked_coalescent_partition(const SweepParams& params,
                                                      const SweepPath& path,
                                                      std::uint64_t seed) {
  return simulate_marked_coalescent(params, path, seed).partition;
}

}  // namespace sweepsf
