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

#ifndef QIG_SKEW_HPP
#define QIG_SKEW_HPP

#include <string>

#include "qig/linalg.hpp"
#include "qig/metric.hpp"

namespace qig {

struct SkewOptions {
  /// Non-regular metrics reject eigenvalues below this floor.
  double eigenvalue_floor = MetricKernel::kDefaultFloor;
  /// Eigenvalues below rank_threshold * lambda_max count as zero for regular metrics.
  double rank_threshold = 1e-12;
  /// Neumaier summation of the spectral sums.
  bool compensated = false;
};

struct SkewResult {
  double value = 0.0;
  std::string metric_id;
  bool regular_branch = true;
  int rank_used = 0;
};

/// K_rho^c(A, B) = Tr A^* c(L_rho, R_rho) B, summed in the eigenbasis of rho.
cplx metric_inner(const DensityMatrix& rho, const ComplexMatrix& a, const ComplexMatrix& b,
                  const MetricKernel& k, const SkewOptions& opts = {});

/// K_rho^c(i[rho, X], i[rho, Y]) = sum_jk c-hat(l_j, l_k) conj(X_jk) Y_jk in
/// the eigenbasis of rho. Extends to singular rho for regular metrics.
cplx commutator_inner(const DensityMatrix& rho, const HermitianMatrix& x, const HermitianMatrix& y,
                      const MonotoneFunction& f, const SkewOptions& opts = {});

/// Metric adjusted skew information. Regular f: (m(c)/2) K(i[rho,A], i[rho,A]).
/// Non-regular f: the unbounded K(i[rho,A], i[rho,A]) without prefactor.
SkewResult skew_information(const DensityMatrix& rho, const HermitianMatrix& a,
                            const MonotoneFunction& f, const SkewOptions& opts = {});

/// Direct trace evaluation of the Wigner-Yanase-Dyson information:
/// -1/2 Tr [rho^p, A][rho^{1-p}, A] for 0 < p < 1 and
/// -1/(p(1-p)) Tr [rho^p, A][rho^{1-p}, A] for 1 < p <= 2.
double wyd_trace_oracle(const DensityMatrix& rho, const HermitianMatrix& a, double p);

}  // namespace qig

#endif  // QIG_SKEW_HPP
