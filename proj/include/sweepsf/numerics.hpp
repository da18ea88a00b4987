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


#ifndef SWEEPSF_NUMERICS_HPP_
#define SWEEPSF_NUMERICS_HPP_

#include <cmath>
#include <string>

namespace sweepsf {

// Neumaier's variant of Kahan summation.
class NeumaierSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  NeumaierSum& operator+=(double x) {
    add(x);
    return *this;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Shortest decimal text that round-trips (17 significant digits).
std::string format_double(double x);

/// Mean and unbiased variance of a sample.
struct SampleMoments {
  double mean = 0.0;
  double var = 0.0;
  double count = 0.0;
  double se_mean() const { return count > 0 ? std::sqrt(var / count) : 0.0; }
};

template <typename Range>
SampleMoments sample_moments(const Range& xs) {
  NeumaierSum s;
  double n = 0;
  for (double x : xs) {
    s += x;
    n += 1;
  }
  SampleMoments m;
  m.count = n;
  if (n == 0) return m;
  m.mean = s.value() / n;
  NeumaierSum q;
  for (double x : xs) q += (x - m.mean) * (x - m.mean);
  m.var = n > 1 ? q.value() / (n - 1) : 0.0;
  return m;
}

}  // namespace sweepsf

#endif  // SWEEPSF_NUMERICS_HPP_
