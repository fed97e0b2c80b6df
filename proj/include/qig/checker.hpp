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

#ifndef QIG_CHECKER_HPP
#define QIG_CHECKER_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qig/linalg.hpp"
#include "qig/metric.hpp"

namespace qig {

/// Everything that determines a suite run. Identical configs give identical reports.
struct TrialConfig {
  std::uint64_t seed = 42;
  std::vector<std::size_t> single_dims{2, 3, 4, 6};
  std::vector<BipartiteDims> bipartite_dims{{2, 2}, {2, 3}, {3, 3}};
  std::size_t trials_per_check = 500;
  double tol_eq = 1e-9;
  double tol_psd = 1e-10;
  std::vector<std::string> metric_ids;
  /// Subset of check ids to run; empty runs all of them.
  std::vector<std::string> checks;
  /// Adds phi(t) = t^2 to the Loewner battery as a known failure.
  bool inject_square_fixture = false;
  /// Worker threads; 0 picks hardware concurrency. Does not affect results.
  std::size_t threads = 1;

  static TrialConfig defaults();
  void validate() const;
};

struct CheckReport {
  std::string check_id;
  std::string metric_id;
  /// "4", "2x3", or "-" for checks without a matrix dimension.
  std::string dims;
  std::size_t trials = 0;
  std::size_t failures = 0;
  double worst_residual = 0.0;
  std::uint64_t worst_case_seed = 0;
  /// Tolerance scale of the check (absolute part of the threshold).
  double tolerance = 0.0;

  bool operator==(const CheckReport&) const = default;
};

/// One trial: fails when residual < -threshold.
struct TrialOutcome {
  double residual = 0.0;
  double threshold = 0.0;
  bool failed() const { return !(residual >= -threshold); }
};

/// All check ids in execution order.
const std::vector<std::string>& check_ids();

/// Minimum eigenvalue of the Loewner matrix L_jk = (phi(x_j) - phi(x_k)) / (x_j - x_k),
/// diagonal by central difference with step 1e-6 max(1, x_j).
using LoewnerFunction = std::function<long double(long double)>;

/// Minimum eigenvalue of the Loewner matrix of phi, built in extended precision.
double loewner_min_eig(const LoewnerFunction& phi, std::span<const double> nodes);

/// g_p(t) = (t^p - 1)/(t - 1) + (t^{1-p} - 1)/(t - 1), g_p(1) = 1, for 1 < p <= 2.
double g_p_value(double p, double t);
long double g_p_extended(double p, long double t);

/// Minimum over trials of lambda_min((phi(X) + phi(Y))/2 - phi((X + Y)/2)) for
/// random positive definite X, Y with spectra in [0.05, 5].
double midpoint_operator_convexity(const std::function<double(double)>& phi, std::size_t n,
                                   std::size_t trials, std::uint64_t seed);

/// n log-spaced nodes in [lo, hi].
std::vector<double> log_spaced(double lo, double hi, std::size_t n);

/// Runs one trial of `check_id` for `metric_id` at `dims` ("4", "2x3" or "-").
TrialOutcome run_trial(const std::string& check_id, const std::string& metric_id, const std::string& dims,
                       std::uint64_t trial_seed, const TrialConfig& config);

/// Seed of trial `index` of a check; replaying it through run_trial reproduces the residual.
std::uint64_t trial_seed(const TrialConfig& config, const std::string& check_id, const std::string& metric_id,
                         const std::string& dims, std::size_t index);

std::vector<CheckReport> run_suite(const TrialConfig& config);

std::size_t total_failures(const std::vector<CheckReport>& reports);

}  // namespace qig

#endif  // QIG_CHECKER_HPP
