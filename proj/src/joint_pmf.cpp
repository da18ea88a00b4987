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


#include "sweepsf/joint_pmf.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "sweepsf/errors.hpp"
#include "sweepsf/numerics.hpp"

namespace sweepsf {

namespace {

constexpr std::pair<Producer, std::string_view> kProducerNames[] = {
    {Producer::thm1_generative, "thm1_generative"},
    {Producer::cor27_exact_sum, "cor27_exact_sum"},
    {Producer::cor27_printed, "cor27_printed"},
    {Producer::mc_yule, "mc_yule"},
    {Producer::mc_coalescent, "mc_coalescent"},
    {Producer::mc_marked, "mc_marked"},
};

}  // namespace

std::string_view to_string(Producer p) {
  for (const auto& [prod, name] : kProducerNames) {
    if (prod == p) return name;
  }
  return "?";
}

Producer producer_from_string(std::string_view s) {
  for (const auto& [prod, name] : kProducerNames) {
    if (name == s) return prod;
  }
  throw DomainError("unknown producer '" + std::string(s) + "'");
}

double JointPmf::total_mass() const {
  NeumaierSum sum;
  for (const auto& [k, p] : table_) sum += p;
  return sum.value();
}

void JointPmf::set(int e, int l, double p, bool allow_negative) {
  if (e < 0 || l < 0 || e + l > n_) {
    throw DomainError("(e,l) = (" + std::to_string(e) + "," +
                      std::to_string(l) + ") outside e + l <= " +
                      std::to_string(n_));
  }
  if (!std::isfinite(p) || (p < 0.0 && !allow_negative)) {
    throw DomainError("invalid probability " + format_double(p));
  }
  if (p == 0.0) {
    table_.erase({e, l});
  } else {
    table_[{e, l}] = p;
  }
}

double JointPmf::get(int e, int l) const {
  auto it = table_.find({e, l});
  return it == table_.end() ? 0.0 : it->second;
}

JointPmf empirical_joint_pmf(const std::vector<PartitionStats>& stats, int n,
                             Producer producer) {
  std::map<JointPmf::Key, std::uint64_t> counts;
  for (const auto& s : stats) ++counts[{s.E, s.L}];
  JointPmf pmf(n, producer);
  const double total = static_cast<double>(stats.size());
  for (const auto& [k, c] : counts) {
    pmf.set(k.first, k.second, static_cast<double>(c) / total);
  }
  return pmf;
}

double total_variation(const JointPmf& p, const JointPmf& q) {
  NeumaierSum sum;
  for (const auto& [k, v] : p.table()) sum += std::fabs(v - q.get(k.first, k.second));
  for (const auto& [k, v] : q.table()) {
    if (!p.table().count(k)) sum += std::fabs(v);
  }
  return 0.5 * sum.value();
}

void write_csv(std::ostream& os, const JointPmf& pmf, bool header) {
  if (header) os << "e,l,p,producer\n";
  for (const auto& [k, p] : pmf.table()) {
    os << k.first << ',' << k.second << ',' << format_double(p) << ','
       << to_string(pmf.producer()) << '\n';
  }
}

JointPmf read_csv(std::istream& is, int n) {
  std::string line;
  bool have_header = false;
  bool have_producer = false;
  JointPmf pmf(n, Producer::cor27_exact_sum);
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!have_header) {
      if (line != "e,l,p,producer") {
        throw DomainError("expected header 'e,l,p,producer', got '" + line + "'");
      }
      have_header = true;
      continue;
    }
    std::stringstream ss(line);
    std::string e, l, p, prod;
    if (!std::getline(ss, e, ',') || !std::getline(ss, l, ',') ||
        !std::getline(ss, p, ',') || !std::getline(ss, prod)) {
      throw DomainError("malformed row '" + line + "'");
    }
    const Producer pr = producer_from_string(prod);
    if (!have_producer) {
      JointPmf fresh(n, pr);
      for (const auto& [k, v] : pmf.table()) fresh.set(k.first, k.second, v, true);
      pmf = fresh;
      have_producer = true;
    } else if (pr != pmf.producer()) {
      throw DomainError("mixed producers in one table");
    }
    pmf.set(std::stoi(e), std::stoi(l), std::strtod(p.c_str(), nullptr), true);
  }
  return pmf;
}

std::string to_json(const JointPmf& pmf) {
  nlohmann::json j;
  j["n"] = pmf.n();
  j["producer"] = std::string(to_string(pmf.producer()));
  j["total_mass"] = pmf.total_mass();
  j["table"] = nlohmann::json::array();
  for (const auto& [k, p] : pmf.table()) {
    j["table"].push_back({{"e", k.first},
                          {"l", k.second},
                          {"p", p},
                          {"producer", std::string(to_string(pmf.producer()))}});
  }
  return j.dump(2);
}

}  // namespace sweepsf
