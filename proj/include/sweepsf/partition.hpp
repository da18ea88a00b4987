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


#ifndef SWEEPSF_PARTITION_HPP_
#define SWEEPSF_PARTITION_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace sweepsf {

enum class FamilyLabel { nonrecombinant, early, late, exceptional };

std::string_view to_string(FamilyLabel label);

struct Block {
  std::vector<int> members;  // leaves, 1-based
  FamilyLabel label = FamilyLabel::nonrecombinant;
};

/// A partition of {1..n} with one label per block.
///
/// The constructor checks that the blocks are nonempty, disjoint and cover
/// {1..n}, and that at most one block is nonrecombinant (DomainError
/// otherwise). Blocks are stored sorted, ordered by smallest member.
class LabeledPartition {
 public:
  LabeledPartition() = default;
  LabeledPartition(int n, std::vector<Block> blocks);

  int n() const { return n_; }
  const std::vector<Block>& blocks() const { return blocks_; }

  /// Label of the block containing `leaf`.
  FamilyLabel label_of(int leaf) const;
  /// Index into blocks() of the block containing `leaf`.
  int block_of(int leaf) const;

  std::string to_string() const;

 private:
  int n_ = 0;
  std::vector<Block> blocks_;
  std::vector<int> block_index_;  // leaf - 1 -> block
};

/// Terminal partition of a sample that never recombined.
LabeledPartition single_block(int n);

struct PartitionStats {
  int n = 0;
  int M = 0;  // early marks or early recombination events
  int S = 0;  // size of the subsample hit by the early event, 0 if none
  int L = 0;  // individuals in late blocks
  int E = 0;  // individuals in early blocks
  int n_nonrec = 0;
  int exceptional_count = 0;    // blocks labeled exceptional
  int exceptional_members = 0;  // individuals in such blocks
};

/// Label counts of a partition. M and S are not visible in the partition
/// and are left at 0 for the simulators to fill in.
PartitionStats partition_stats(const LabeledPartition& p);

}  // namespace sweepsf

#endif  // SWEEPSF_PARTITION_HPP_
