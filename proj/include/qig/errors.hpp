// Copyright 2026 The qig Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QIG_ERRORS_HPP
#define QIG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qig {

/// Input violates a type invariant (Hermiticity, unit trace, dimensions, ...).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A scalar function was evaluated outside of its domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A catalog parameter outside of the supported range, e.g. wyd:3.
class UnsupportedParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A non-regular metric was asked to act on a state with spectrum below the
/// eigenvalue floor. Unbounded skew information has no extension to the
/// boundary of the state space.
class SingularMetricError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qig

#endif  // QIG_ERRORS_HPP
