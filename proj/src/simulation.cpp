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


#include "sweepsf/simulation.hpp"

#include <cmath>
#include <string>

#include "sweepsf/errors.hpp"
#include "sweepsf/formula.hpp"
#include "sweepsf/parallel.hpp"
#include "sweepsf/rng.hpp"
#include "sweepsf/structured_coalescent.hpp"
#include "sweepsf/sweep_diffusion.hpp"
#include "sweepsf/yule.hpp"

namespace sweepsf {

std::string_view to_string(Model m) {
  switch (m) {
    case Model::coalescent:
      return "coalescent";
    case Model::marked:
      return "marked";
    case Model::yule:
      return "yule";
    case Model::thm1:
      return "thm1";
  }
  return "?";
}

Model model_from_string(std::string_view s) {
  for (Model m : {Model::coalescent, Model::marked, Model::yule, Model::thm1}) {
    if (to_string(m) == s) return m;
  }
  throw DomainError("unknown model '" + std::string(s) + "'");
}

Producer producer_of(Model m) {
  switch (m) {
    case Model::coalescent:
      return Producer::mc_coalescent;
    case Model::marked:
      return Producer::mc_marked;
    case Model::yule:
      return Producer::mc_yule;
    case Model::thm1:
      return Producer::thm1_generative;
  }
  return Producer::thm1_generative;
}

std::vector<ReplicateRecord> simulate_replicates(Model model,
                                                 const SweepParams& params,
                                                 std::uint64_t reps,
                                                 std::uint64_t seed, double dt,
                                                 unsigned threads) {
  params.validate();
  if (dt <= 0.0) dt = 1.0 / (50.0 * params.alpha);
  const int n = params.n;
  auto finish = [n](ReplicateRecord rec, const LabeledPartition& p) {
    rec.label_first = p.label_of(1);
    rec.label_last = p.label_of(n);
    return rec;
  };
  switch (model) {
    case Model::thm1: {
      const Thm1Law law(params);
      return run_replicates(reps, threads, [&](std::uint64_t r) {
        ReplicateRecord rec;
        rec.stats = sample_thm1_partition(law, derive_seed(seed, r));
        return rec;
      });
    }
    case Model::yule:
      return run_replicates(reps, threads, [&](std::uint64_t r) {
        const auto out = simulate_marked_yule(
            params, derive_seed(seed, r, Stream::genealogy));
        ReplicateRecord rec;
        rec.stats = out.stats;
        rec.F_observed = out.F_observed;
        return finish(rec, out.partition);
      });
    case Model::marked:
      return run_replicates(reps, threads, [&](std::uint64_t r) {
        const SweepPath path =
            simulate_sweep_path(params, dt, derive_seed(seed, r, Stream::path));
        const auto out = simulate_marked_coalescent(
            params, path, derive_seed(seed, r, Stream::genealogy));
        ReplicateRecord rec;
        rec.stats = out.stats;
        return finish(rec, out.partition);
      });
    case Model::coalescent:
      return run_replicates(reps, threads, [&](std::uint64_t r) {
        const SweepPath path =
            simulate_sweep_path(params, dt, derive_seed(seed, r, Stream::path));
        const auto out = simulate_structured_coalescent(
            params, path, derive_seed(seed, r, Stream::genealogy));
        ReplicateRecord rec;
        rec.stats = out.stats;
        rec.back_recombinations = out.back_recombinations;
        return finish(rec, out.partition);
      });
  }
  return {};
}

std::vector<PartitionStats> stats_of(const std::vector<ReplicateRecord>& recs) {
  std::vector<PartitionStats> out;
  out.reserve(recs.size());
  for (const auto& r : recs) out.push_back(r.stats);
  return out;
}

double tv_noise_bound(std::size_t cells, std::uint64_t samples) {
  if (samples == 0) return 1.0;
  return std::sqrt((static_cast<double>(cells) * std::log(2.0) + std::log(20.0)) /
                   (2.0 * static_cast<double>(samples)));
}

}  // namespace sweepsf
