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

#include <cmath>

#include <gtest/gtest.h>

#include "sweepsf/errors.hpp"
#include "sweepsf/joint_pmf.hpp"
#include "sweepsf/rng.hpp"
#include "sweepsf/simulation.hpp"
#include "sweepsf/sweep_diffusion.hpp"

namespace sweepsf {
namespace {

SweepPath path_for(double alpha, std::uint64_t seed) {
  return simulate_sweep_path(SweepParams{alpha, 0.0, 1}, 1.0 / (50.0 * alpha), seed);
}

int exceptional_members(const LabeledPartition& p) {
  int m = 0;
  for (const auto& b : p.blocks()) {
    if (b.label == FamilyLabel::exceptional) m += static_cast<int>(b.members.size());
  }
  return m;
}

TEST(Structured, NoRecombinationGivesOneBlock) {
  const SweepParams p{1e3, 0.0, 6};
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto out = simulate_structured_coalescent(p, path_for(1e3, s), s);
    EXPECT_EQ(out.stats.n_nonrec, 6);
    EXPECT_EQ(out.partition.blocks().size(), 1u);
    EXPECT_EQ(out.back_recombinations, 0);
  }
}

TEST(Structured, LabelCountsAddUp) {
  const SweepParams p{1e3, 1.0, 5};
  for (std::uint64_t s = 0; s < 300; ++s) {
    const auto out = simulate_structured_coalescent(p, path_for(1e3, s), derive_seed(s, 1));
    const auto& st = out.stats;
    EXPECT_EQ(st.L + st.E + st.n_nonrec + exceptional_members(out.partition), 5);
    EXPECT_GE(st.M, 0);
    if (st.M == 0) EXPECT_EQ(st.S, 0);
  }
}

TEST(Structured, Deterministic) {
  const SweepParams p{1e3, 0.8, 4};
  const SweepPath path = path_for(1e3, 3);
  EXPECT_EQ(simulate_structured_partition(p, path, 11).to_string(),
            simulate_structured_partition(p, path, 11).to_string());
}

TEST(Structured, RejectsForeignPath) {
  EXPECT_THROW(simulate_structured_coalescent(SweepParams{2e3, 0.5, 3}, path_for(1e3, 1), 1),
               DomainError);
  EXPECT_THROW(simulate_marked_coalescent(SweepParams{2e3, 0.5, 3}, path_for(1e3, 1), 1),
               DomainError);
}

TEST(Structured, StepSizeGuard) {
  SweepPath path;
  path.alpha = 1e4;
  path.dt = 1e4;
  path.xs = {0.0, 0.5, 1.0};
  path.fixation_time = 2e4;
  EXPECT_THROW(simulate_structured_coalescent(SweepParams{1e4, 1.0, 3}, path, 1),
               StepSizeError);
}

TEST(Marked, LabelsAndSingletons) {
  const SweepParams p{1e3, 1.0, 5};
  for (std::uint64_t s = 0; s < 300; ++s) {
    const auto out = simulate_marked_coalescent(p, path_for(1e3, s), s);
    EXPECT_EQ(out.stats.exceptional_count, 0);
    EXPECT_EQ(out.stats.L + out.stats.E + out.stats.n_nonrec, 5);
    for (const auto& b : out.partition.blocks()) {
      if (b.label == FamilyLabel::late) EXPECT_EQ(b.members.size(), 1u);
    }
    EXPECT_GE(out.marks, out.stats.M);
  }
}

TEST(Replicates, ThreadCountDoesNotChangeResults) {
  const SweepParams p{1e3, 0.5, 3};
  for (Model m : {Model::coalescent, Model::marked, Model::yule, Model::thm1}) {
    const auto a = simulate_replicates(m, p, 200, 42, 0.0, 1);
    const auto b = simulate_replicates(m, p, 200, 42, 0.0, 3);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t r = 0; r < a.size(); ++r) {
      EXPECT_EQ(a[r].stats.L, b[r].stats.L);
      EXPECT_EQ(a[r].stats.E, b[r].stats.E);
      EXPECT_EQ(a[r].stats.S, b[r].stats.S);
      EXPECT_EQ(a[r].back_recombinations, b[r].back_recombinations);
    }
  }
}

TEST(Replicates, Exchangeability) {
  // Leaf 1 and leaf n carry the same label law.
  const SweepParams p{1e3, 1.0, 4};
  const int reps = 6000;
  const auto recs = simulate_replicates(Model::coalescent, p, reps, 7);
  for (FamilyLabel lab : {FamilyLabel::nonrecombinant, FamilyLabel::late, FamilyLabel::early}) {
    int first = 0, last = 0;
    for (const auto& r : recs) {
      first += r.label_first == lab;
      last += r.label_last == lab;
    }
    const double p1 = static_cast<double>(first) / reps, p2 = static_cast<double>(last) / reps;
    const double se = std::sqrt(2.0 * std::max(p1, 1e-3) / reps);
    EXPECT_NEAR(p1, p2, 4 * se) << to_string(lab);
  }
}

TEST(Replicates, ModelNames) {
  for (Model m : {Model::coalescent, Model::marked, Model::yule, Model::thm1}) {
    EXPECT_EQ(model_from_string(to_string(m)), m);
  }
  EXPECT_THROW(model_from_string("moran"), DomainError);
  EXPECT_EQ(producer_of(Model::yule), Producer::mc_yule);
}

TEST(Replicates, NoiseBound) {
  EXPECT_NEAR(tv_noise_bound(10, 1000),
              std::sqrt((10 * std::log(2.0) + std::log(20.0)) / 2000.0), 1e-15);
}

TEST(Layers, StructuredCloseToMarked) {
  const SweepParams p{1e4, 0.5, 3};
  const int reps = 4000;
  const JointPmf a = empirical_joint_pmf(
      stats_of(simulate_replicates(Model::coalescent, p, reps, 5)), 3, Producer::mc_coalescent);
  const JointPmf b = empirical_joint_pmf(
      stats_of(simulate_replicates(Model::marked, p, reps, 5)), 3, Producer::mc_marked);
  EXPECT_LT(total_variation(a, b), 2 * tv_noise_bound(10, reps));
}

}  // namespace
}  // namespace sweepsf
