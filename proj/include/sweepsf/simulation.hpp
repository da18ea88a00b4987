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


#ifndef SWEEPSF_SIMULATION_HPP_
#define SWEEPSF_SIMULATION_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sweepsf/joint_pmf.hpp"
#include "sweepsf/params.hpp"
#include "sweepsf/partition.hpp"

namespace sweepsf {

enum class Model { coalescent, marked, yule, thm1 };

std::string_view to_string(Model m);
/// Throws DomainError on unknown names.
Model model_from_string(std::string_view s);
Producer producer_of(Model m);

struct ReplicateRecord {
  PartitionStats stats;
  int back_recombinations = 0;  // structured coalescent only
  std::int64_t F_observed = 0;  // Yule tree only
  FamilyLabel label_first = FamilyLabel::nonrecombinant;  // leaf 1
  FamilyLabel label_last = FamilyLabel::nonrecombinant;   // leaf n
};

/// Runs `reps` replicates of `model`. Replicate r owns the seeds
/// derive_seed(seed, r, stream) for its path and genealogy streams, so the
/// result does not depend on `threads`. dt <= 0 selects 1 / (50 alpha).
std::vector<ReplicateRecord> simulate_replicates(Model model,
                                                 const SweepParams& params,
                                                 std::uint64_t reps,
                                                 std::uint64_t seed,
                                                 double dt = 0.0,
                                                 unsigned threads = 0);

std::vector<PartitionStats> stats_of(const std::vector<ReplicateRecord>& recs);

/// Radius r such that an empirical pmf on `cells` cells from `samples`
/// draws is within TV r of the truth with probability >= 95%.
double tv_noise_bound(std::size_t cells, std::uint64_t samples);

}  // namespace sweepsf

#endif  // SWEEPSF_SIMULATION_HPP_
