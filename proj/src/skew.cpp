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

#include "qig/skew.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qig/errors.hpp"

namespace qig {

namespace {

void require_dims(const DensityMatrix& rho, std::size_t n, const char* what) {
  if (rho.dim() != n) {
    std::ostringstream msg;
    msg << what << ": state dimension " << rho.dim() << " does not match operator dimension " << n;
    throw ValidationError(msg.str());
  }
}

// U^dagger M U.
ComplexMatrix to_eigenbasis(const Spectrum& s, const ComplexMatrix& m) {
  return s.vectors.adjoint() * m * s.vectors;
}

// Eigenvalues prepared for kernel evaluation: tiny negatives clamped, and for
// regular metrics, values below the rank threshold set to zero.
std::vector<double> kernel_eigenvalues(const Spectrum& s, bool regular, const SkewOptions& opts,
                                       int* rank) {
  std::vector<double> out(s.eigenvalues);
  const double cutoff = regular ? opts.rank_threshold * std::max(s.max(), 0.0) : 0.0;
  int r = 0;
  for (double& l : out) {
    if (l < cutoff || l < 0.0) l = 0.0;
    if (l > 0.0) ++r;
  }
  if (rank) *rank = r;
  return out;
}

template <typename Term>
double spectral_sum(std::size_t n, bool compensated, Term term) {
  if (compensated) {
    CompensatedSum acc;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) acc.add(term(j, k));
    return acc.value();
  }
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) acc += term(j, k);
  return acc;
}

}  // namespace

cplx metric_inner(const DensityMatrix& rho, const ComplexMatrix& a, const ComplexMatrix& b,
                  const MetricKernel& k, const SkewOptions& opts) {
  require_dims(rho, a.rows(), "metric_inner");
  require_dims(rho, b.rows(), "metric_inner");
  const Spectrum& s = rho.spectrum();
  const bool regular = k.function().regular();
  const std::vector<double> lambda = kernel_eigenvalues(s, regular, opts, nullptr);
  if (!regular && s.min() < k.eigenvalue_floor()) {
    std::ostringstream msg;
    msg << "metric_inner: eigenvalue " << s.min() << " below floor for non-regular "
        << k.function().id();
    throw SingularMetricError(msg.str());
  }
  const ComplexMatrix ah = to_eigenbasis(s, a);
  const ComplexMatrix bh = to_eigenbasis(s, b);
  const std::size_t n = rho.dim();
  const double f0 = k.function().at_zero();

  auto kernel = [&](double x, double y) {
    if (x > 0.0 && y > 0.0) return k.c(x, y);
    if (x == 0.0 && y == 0.0) return std::numeric_limits<double>::infinity();
    // c(x, 0) = 1 / (x f(0)) for regular f.
    return 1.0 / (std::max(x, y) * f0);
  };

  auto part = [&](bool imag) {
    return spectral_sum(n, opts.compensated, [&](std::size_t j, std::size_t kk) {
      const cplx prod = std::conj(ah(j, kk)) * bh(j, kk);
      if (prod == cplx{}) return 0.0;
      const double c = kernel(lambda[j], lambda[kk]);
      if (!std::isfinite(c)) {
        throw SingularMetricError("metric_inner: operator has support on the kernel of the state");
      }
      return c * (imag ? prod.imag() : prod.real());
    });
  };
  return {part(false), part(true)};
}

cplx commutator_inner(const DensityMatrix& rho, const HermitianMatrix& x, const HermitianMatrix& y,
                      const MonotoneFunction& f, const SkewOptions& opts) {
  require_dims(rho, x.dim(), "commutator_inner");
  require_dims(rho, y.dim(), "commutator_inner");
  const MetricKernel k(f, opts.eigenvalue_floor);
  const Spectrum& s = rho.spectrum();
  if (!f.regular() && s.min() < opts.eigenvalue_floor) {
    std::ostringstream msg;
    msg << "commutator_inner: eigenvalue " << s.min() << " below floor for non-regular " << f.id();
    throw SingularMetricError(msg.str());
  }
  const std::vector<double> lambda = kernel_eigenvalues(s, f.regular(), opts, nullptr);
  const ComplexMatrix xh = to_eigenbasis(s, x.matrix());
  const ComplexMatrix yh = to_eigenbasis(s, y.matrix());
  const std::size_t n = rho.dim();

  std::vector<double> weights(n * n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t kk = 0; kk < n; ++kk) weights[j * n + kk] = k.c_hat(lambda[j], lambda[kk]);

  auto part = [&](bool imag) {
    return spectral_sum(n, opts.compensated, [&](std::size_t j, std::size_t kk) {
      const cplx prod = std::conj(xh(j, kk)) * yh(j, kk);
      return weights[j * n + kk] * (imag ? prod.imag() : prod.real());
    });
  };
  return {part(false), part(true)};
}

SkewResult skew_information(const DensityMatrix& rho, const HermitianMatrix& a,
                            const MonotoneFunction& f, const SkewOptions& opts) {
  require_dims(rho, a.dim(), "skew_information");
  const MetricKernel k(f, opts.eigenvalue_floor);
  const Spectrum& s = rho.spectrum();
  if (!f.regular() && s.min() < opts.eigenvalue_floor) {
    std::ostringstream msg;
    msg << "skew_information: eigenvalue " << s.min() << " below floor " << opts.eigenvalue_floor
        << " for non-regular " << f.id();
    throw SingularMetricError(msg.str());
  }
  SkewResult out;
  out.metric_id = f.id();
  out.regular_branch = f.regular();
  const std::vector<double> lambda = kernel_eigenvalues(s, f.regular(), opts, &out.rank_used);
  const ComplexMatrix ah = to_eigenbasis(s, a.matrix());
  const std::size_t n = rho.dim();

  // c-hat is symmetric and vanishes on the diagonal, so only j < k is summed.
  auto term = [&](std::size_t j, std::size_t kk) {
    if (kk <= j) return 0.0;
    const double w = std::norm(ah(j, kk));
    if (w == 0.0) return 0.0;
    return 2.0 * k.c_hat(lambda[j], lambda[kk]) * w;
  };
  const double sum = spectral_sum(n, opts.compensated, term);
  out.value = f.regular() ? 0.5 * f.metric_constant() * sum : sum;
  return out;
}

double wyd_trace_oracle(const DensityMatrix& rho, const HermitianMatrix& a, double p) {
  require_dims(rho, a.dim(), "wyd_trace_oracle");
  const bool bounded = p > 0.0 && p < 1.0;
  const bool extended = p > 1.0 && p <= 2.0;
  if (!bounded && !extended) {
    std::ostringstream msg;
    msg << "wyd_trace_oracle: p=" << p << " outside (0, 1) U (1, 2]";
    throw UnsupportedParameter(msg.str());
  }
  const Spectrum& s = rho.spectrum();
  if (extended && !(s.min() > 0.0)) {
    throw SingularMetricError("wyd_trace_oracle: rho^{1-p} needs a positive definite state");
  }
  auto power = [](double q) {
    return [q](double x) {
      x = std::max(x, 0.0);
      return std::pow(x, q);
    };
  };
  const ComplexMatrix rp = matrix_function(s, power(p)).matrix();
  const ComplexMatrix rq = matrix_function(s, power(1.0 - p)).matrix();
  const ComplexMatrix& am = a.matrix();
  const ComplexMatrix c1 = rp * am - am * rp;
  const ComplexMatrix c2 = rq * am - am * rq;
  const double tr = (c1 * c2).trace().real();
  return bounded ? -0.5 * tr : -tr / (p * (1.0 - p));
}

}  // namespace qig
