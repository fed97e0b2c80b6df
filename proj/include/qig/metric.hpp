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

#ifndef QIG_METRIC_HPP
#define QIG_METRIC_HPP

#include <string>
#include <string_view>
#include <vector>

namespace qig {

enum class Regularity { Regular, NonRegular };

/// A function f in F_op: operator monotone on (0, inf), f(t) = t f(1/t),
/// f(1) = 1. Each catalog entry generates a monotone metric through the
/// Morozova-Chentsov function c(x, y) = 1 / (y f(x / y)).
class MonotoneFunction {
 public:
  enum class Family { Wyd, Kubo, Harmonic, Bures };

  /// f_p(t) = p(1-p)(t-1)^2 / ((t^p - 1)(t^{1-p} - 1)), p in [-1, 2] \ {0, 1}.
  static MonotoneFunction wyd(double p);
  /// (t - 1) / log t.
  static MonotoneFunction kubo();
  /// 2t / (t + 1), the minimal monotone metric.
  static MonotoneFunction harmonic();
  /// (1 + t) / 2, the SLD (Bures) metric.
  static MonotoneFunction bures();

  /// Parses "wyd:<p>", "kubo", "harmonic" or "bures".
  static MonotoneFunction parse(std::string_view id);

  Family family() const { return family_; }
  /// Only meaningful for the wyd family.
  double p() const { return p_; }
  std::string id() const;

  double operator()(double t) const;
  /// Same function in extended precision.
  long double extended(long double t) const;

  /// lim_{t -> 0+} f(t).
  double at_zero() const;
  Regularity regularity() const;
  bool regular() const { return regularity() == Regularity::Regular; }
  /// m(c) = f(0); throws UnsupportedParameter for non-regular functions.
  double metric_constant() const;

 private:
  MonotoneFunction(Family family, double p) : family_(family), p_(p) {}

  Family family_;
  double p_ = 0.0;
};

/// Default catalog: wyd on a p grid plus kubo, harmonic and bures.
std::vector<MonotoneFunction> default_catalog();

/// Evaluators for c, c-hat and h derived from f. c-hat(x, y) = (x - y)^2 c(x, y)
/// is extended to the boundary for regular f; for non-regular f the
/// arguments must stay above `eigenvalue_floor`.
class MetricKernel {
 public:
  static constexpr double kDefaultFloor = 1e-12;
  /// Pairs closer than this are treated as equal, where c-hat vanishes.
  static constexpr double kDegenerateGap = 1e-10;

  explicit MetricKernel(MonotoneFunction f, double eigenvalue_floor = kDefaultFloor);

  const MonotoneFunction& function() const { return f_; }
  double eigenvalue_floor() const { return floor_; }

  double c(double x, double y) const;
  double c_hat(double x, double y) const;
  double h(double t) const;

 private:
  MonotoneFunction f_;
  double floor_;
};

}  // namespace qig

#endif  // QIG_METRIC_HPP
