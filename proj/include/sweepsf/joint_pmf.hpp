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


#ifndef SWEEPSF_JOINT_PMF_HPP_
#define SWEEPSF_JOINT_PMF_HPP_

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sweepsf/partition.hpp"

namespace sweepsf {

enum class Producer {
  thm1_generative,
  cor27_exact_sum,
  cor27_printed,
  mc_yule,
  mc_coalescent,
  mc_marked,
};

std::string_view to_string(Producer p);
/// Inverse of to_string; throws DomainError on unknown names.
Producer producer_from_string(std::string_view s);

/// Probability table over (e, l). Entries are nonnegative and satisfy
/// e + l <= n; exact zeros are not stored. total_mass is the sum of the
/// entries and is not renormalized.
class JointPmf {
 public:
  using Key = std::pair<int, int>;  // (e, l)

  JointPmf() = default;
  JointPmf(int n, Producer producer) : n_(n), producer_(producer) {}

  int n() const { return n_; }
  Producer producer() const { return producer_; }
  const std::map<Key, double>& table() const { return table_; }
  double total_mass() const;

  /// Sets P[E = e, L = l]. Throws DomainError for p < 0, a non-finite p or
  /// e + l > n; when `allow_negative` is set, negative entries are kept
  /// (used only to transcribe formulas whose sign is part of the diagnostic).
  void set(int e, int l, double p, bool allow_negative = false);
  double get(int e, int l) const;

 private:
  int n_ = 0;
  Producer producer_ = Producer::cor27_exact_sum;
  std::map<Key, double> table_;
};

/// Relative frequencies of (E, L) among the given stats.
JointPmf empirical_joint_pmf(const std::vector<PartitionStats>& stats,
                             int n, Producer producer);

/// (1/2) sum |p - q| over the union of supports.
double total_variation(const JointPmf& p, const JointPmf& q);

/// Rows "e,l,p,producer" with 17 significant digits; header optional.
void write_csv(std::ostream& os, const JointPmf& pmf, bool header = true);
/// Parses the CSV written by write_csv (header line required, lines
/// starting with '#' are skipped). All rows must name the same producer.
JointPmf read_csv(std::istream& is, int n);
std::string to_json(const JointPmf& pmf);

}  // namespace sweepsf

#endif  // SWEEPSF_JOINT_PMF_HPP_
