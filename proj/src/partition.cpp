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


#include "sweepsf/partition.hpp"

#include <algorithm>
#include <sstream>

#include "sweepsf/errors.hpp"

namespace sweepsf {

std::string_view to_string(FamilyLabel label) {
  switch (label) {
    case FamilyLabel::nonrecombinant:
      return "nonrecombinant";
    case FamilyLabel::early:
      return "early";
    case FamilyLabel::late:
      return "late";
    case FamilyLabel::exceptional:
      return "exceptional";
  }
  return "?";
}

LabeledPartition::LabeledPartition(int n, std::vector<Block> blocks)
    : n_(n), blocks_(std::move(blocks)) {
  if (n < 1) throw DomainError("partition needs n >= 1");
  std::vector<int> seen(static_cast<std::size_t>(n), 0);
  int nonrec = 0;
  for (auto& b : blocks_) {
    if (b.members.empty()) throw DomainError("partition has an empty block");
    std::sort(b.members.begin(), b.members.end());
    for (int leaf : b.members) {
      if (leaf < 1 || leaf > n) {
        throw DomainError("leaf " + std::to_string(leaf) + " outside 1.." +
                          std::to_string(n));
      }
      if (seen[leaf - 1]++) {
        throw DomainError("leaf " + std::to_string(leaf) +
                          " appears in two blocks");
      }
    }
    if (b.label == FamilyLabel::nonrecombinant) ++nonrec;
  }
  for (int leaf = 1; leaf <= n; ++leaf) {
    if (!seen[leaf - 1]) {
      throw DomainError("leaf " + std::to_string(leaf) + " is in no block");
    }
  }
  if (nonrec > 1) throw DomainError("more than one nonrecombinant block");
  std::sort(blocks_.begin(), blocks_.end(), [](const Block& a, const Block& b) {
    return a.members.front() < b.members.front();
  });
  block_index_.assign(static_cast<std::size_t>(n), 0);
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    for (int leaf : blocks_[k].members) {
      block_index_[leaf - 1] = static_cast<int>(k);
    }
  }
}

int LabeledPartition::block_of(int leaf) const {
  if (leaf < 1 || leaf > n_) throw DomainError("leaf out of range");
  return block_index_[leaf - 1];
}

FamilyLabel LabeledPartition::label_of(int leaf) const {
  return blocks_[block_of(leaf)].label;
}

std::string LabeledPartition::to_string() const {
  std::ostringstream os;
  for (const auto& b : blocks_) {
    os << '{';
    for (std::size_t k = 0; k < b.members.size(); ++k) {
      if (k) os << ',';
      os << b.members[k];
    }
    os << "}:" << sweepsf::to_string(b.label) << ' ';
  }
  std::string s = os.str();
  if (!s.empty()) s.pop_back();
  return s;
}

LabeledPartition single_block(int n) {
  Block b;
  for (int leaf = 1; leaf <= n; ++leaf) b.members.push_back(leaf);
  b.label = FamilyLabel::nonrecombinant;
  return LabeledPartition(n, {b});
}

PartitionStats partition_stats(const LabeledPartition& p) {
  PartitionStats st;
  st.n = p.n();
  for (const auto& b : p.blocks()) {
    const int size = static_cast<int>(b.members.size());
    switch (b.label) {
      case FamilyLabel::nonrecombinant:
        st.n_nonrec += size;
        break;
      case FamilyLabel::early:
        st.E += size;
        break;
      case FamilyLabel::late:
        st.L += size;
        break;
      case FamilyLabel::exceptional:
        st.exceptional_count += 1;
        st.exceptional_members += size;
        break;
    }
  }
  return st;
}

}  // namespace sweepsf
