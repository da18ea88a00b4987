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


#ifndef SWEEPSF_STRUCTURED_COALESCENT_HPP_
#define SWEEPSF_STRUCTURED_COALESCENT_HPP_

#include <cstdint>

#include "sweepsf/params.hpp"
#include "sweepsf/partition.hpp"
#include "sweepsf/rng.hpp"
#include "sweepsf/sweep_diffusion.hpp"

namespace sweepsf {

enum class Background { B, b };

struct LineageState {
  int lineage_id = 0;
  Background background = Background::B;
};

/// Rate * substep is kept at or below this on every thinning substep.
inline constexpr double kMaxRateStep = 0.1;
/// Upper limit on thinning substeps within one grid interval.
inline constexpr std::uint64_t kMaxSubsteps = 10000000;

struct StructuredOutcome {
  LabeledPartition partition;
  // M: recombinations out of B after the first coalescence of the sample
  // tree at the selective locus (early events);
  // S: leaves carried by the lineage of the earliest such event in
  // forward time.
  PartitionStats stats;
  int back_recombinations = 0;  // b -> B jumps
  int b_coalescences = 0;
  int coalescences = 0;
};

/// Structured coalescent run backward along the grid of `path`: in each
/// grid interval the background frequency is the interval midpoint; B
/// lineages leave B at rate (1 - X) rho, b lineages return at rate X rho,
/// B pairs coalesce at rate 2 / X and b pairs at rate 2 / (1 - X). Events
/// are thinned on substeps with rate * h <= kMaxRateStep, at most one per
/// substep. Above X = 1 - 1/(10 alpha) the b lineages merge at once; at
/// X = 0 (and at the start of the sweep) the B lineages merge at once.
/// A lineage that leaves B before the selective-locus tree of the sample
/// first coalesces is late; that tree also merges pairs not carried by two
/// B lineages, at rate 2 / X each, without moving any lineage.
/// Throws StepSizeError if an interval needs more than kMaxSubsteps.
StructuredOutcome simulate_structured_coalescent(const SweepParams& params,
                                                 const SweepPath& path,
                                                 std::uint64_t seed);
LabeledPartition simulate_structured_partition(const SweepParams& params,
                                               const SweepPath& path,
                                               std::uint64_t seed);

struct MarkedCoalescentOutcome {
  LabeledPartition partition;  // labels nonrecombinant, early, late only
  PartitionStats stats;        // M: early marks; S as for the Yule tree
  int marks = 0;
};

/// Coalescent with pair rate 2 / X along the grid of `path`, marked at rate
/// (1 - X) rho per line. A mark turns the leaves below it that are not yet
/// cut off into one family; it is early if fewer than n lines exist.
MarkedCoalescentOutcome simulate_marked_coalescent(const SweepParams& params,
                                                   const SweepPath& path,
                                                   std::uint64_t seed);
LabeledPartition simulate_marked_coalescent_partition(const SweepParams& params,
                                                      const SweepPath& path,
                                                      std::uint64_t seed);

}  // namespace sweepsf

#endif  // SWEEPSF_STRUCTURED_COALESCENT_HPP_
