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

#ifndef SWEEPSF_ERRORS_HPP_
#define SWEEPSF_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace sweepsf {

// Argument outside the mathematical domain of an operation (alpha <= 1,
// k > min(i, n), xi on the boundary, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Caller-supplied configuration that the numerics cannot honor, e.g. an
// Euler step too coarse for the drift scale.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The asymptotic formulas produced a negative probability: alpha is too
// small or gamma * n / log(alpha) too large for the approximation regime.
class ValidityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Quadrature or root search failed to reach the requested accuracy.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Event thinning would need more sub-steps than allowed on one grid step.
class StepSizeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Requested enumeration exceeds the configured size limit.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace sweepsf

#endif  // SWEEPSF_ERRORS_HPP_
