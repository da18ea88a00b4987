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


#include <cmath>
#include <cstdio>
#include <string>

#include "sweepsf/errors.hpp"
#include "sweepsf/numerics.hpp"
#include "sweepsf/params.hpp"

namespace sweepsf {

void SweepParams::validate() const {
  if (!(alpha > 1.0) || !std::isfinite(alpha)) {
    throw DomainError("alpha must be a finite number > 1, got " +
                      format_double(alpha));
  }
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
    throw DomainError("gamma must be a finite number >= 0, got " +
                      format_double(gamma));
  }
  if (n < 1) throw DomainError("n must be >= 1, got " + std::to_string(n));
}

std::string SweepParams::to_string() const {
  return "alpha=" + format_double(alpha) + " gamma=" + format_double(gamma) +
         " n=" + std::to_string(n);
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace sweepsf
