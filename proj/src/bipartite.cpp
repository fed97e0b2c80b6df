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

#include "qig/bipartite.hpp"

#include <cmath>
#include <sstream>

#include "qig/errors.hpp"

namespace qig {

namespace {

constexpr double kResolutionTolerance = 1e-11;

// Normalized vector spanning the range of a rank-one projection.
std::vector<cplx> range_vector(const HermitianMatrix& p) {
  const std::size_t n = p.dim();
  std::size_t best = 0;
  for (std::size_t c = 1; c < n; ++c)
    if (p(c, c).real() > p(best, best).real()) best = c;
  std::vector<cplx> v(n);
  double norm2 = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    v[r] = p(r, best);
    norm2 += std::norm(v[r]);
  }
  const double norm = std::sqrt(norm2);
  for (cplx& x : v) x /= norm;
  return v;
}

}  // namespace

HermitianMatrix embed(const HermitianMatrix& a, BipartiteDims dims, Party party) {
  if (party == Party::First) {
    if (a.dim() != dims.n1) throw ValidationError("embed: observable does not match first party");
    return kron(a, HermitianMatrix::identity(dims.n2));
  }
  if (a.dim() != dims.n2) throw ValidationError("embed: observable does not match second party");
  return kron(HermitianMatrix::identity(dims.n1), a);
}

HermitianMatrix aggregate(const HermitianMatrix& a, const HermitianMatrix& b, Sign sign) {
  const BipartiteDims dims{a.dim(), b.dim()};
  const HermitianMatrix left = embed(a, dims, Party::First);
  const HermitianMatrix right = embed(b, dims, Party::Second);
  return sign == Sign::Plus ? left + right : left - right;
}

void validate_resolution(const std::vector<HermitianMatrix>& projections) {
  if (projections.empty()) throw ValidationError("resolution of identity: no projections");
  const std::size_t n = projections.front().dim();
  if (projections.size() != n) {
    std::ostringstream msg;
    msg << "resolution of identity: expected " << n << " rank-one projections, got "
        << projections.size();
    throw ValidationError(msg.str());
  }
  ComplexMatrix sum(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const ComplexMatrix& pi = projections[i].matrix();
    if (pi.rows() != n) throw ValidationError("resolution of identity: mixed dimensions");
    for (std::size_t j = 0; j < n; ++j) {
      ComplexMatrix prod = pi * projections[j].matrix();
      if (i == j) prod -= pi;
      if (prod.max_abs() > kResolutionTolerance) {
        throw ValidationError("resolution of identity: projections are not orthogonal idempotents");
      }
    }
    sum += pi;
  }
  if ((sum - ComplexMatrix::identity(n)).max_abs() > kResolutionTolerance) {
    throw ValidationError("resolution of identity: projections do not sum to the identity");
  }
}

BipartiteDims SemiQuantumSpec::dims() const {
  return {projections.empty() ? 0 : projections.front().dim(),
          party2_states.empty() ? 0 : party2_states.front().dim()};
}

void SemiQuantumSpec::validate() const {
  validate_resolution(projections);
  if (probabilities.size() != projections.size() || party2_states.size() != projections.size()) {
    throw ValidationError("semi-quantum spec: probabilities, projections and states differ in count");
  }
  double total = 0.0;
  for (double p : probabilities) {
    if (!(p >= 0.0)) throw ValidationError("semi-quantum spec: negative probability");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) throw ValidationError("semi-quantum spec: probabilities do not sum to 1");
  for (const DensityMatrix& s : party2_states) {
    if (s.dim() != party2_states.front().dim()) {
      throw ValidationError("semi-quantum spec: second-party states differ in dimension");
    }
  }
}

SemiQuantumSpec SemiQuantumSpec::mixed_with_identity(double delta) const {
  const BipartiteDims d = dims();
  SemiQuantumSpec out = *this;
  const double share = delta / static_cast<double>(d.n1);
  const HermitianMatrix flat = (1.0 / static_cast<double>(d.n2)) * HermitianMatrix::identity(d.n2);
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    const double weight = (1.0 - delta) * probabilities[i];
    const double pi = weight + share;
    out.probabilities[i] = pi;
    out.party2_states[i] =
        DensityMatrix((weight / pi) * party2_states[i].hermitian() + (share / pi) * flat);
  }
  return out;
}

DensityMatrix semi_quantum_state(const SemiQuantumSpec& spec) {
  spec.validate();
  const BipartiteDims d = spec.dims();
  ComplexMatrix rho(d.total(), d.total());
  for (std::size_t i = 0; i < spec.probabilities.size(); ++i) {
    if (spec.probabilities[i] == 0.0) continue;
    rho += kron(spec.projections[i].matrix(), spec.party2_states[i].matrix()) * cplx(spec.probabilities[i]);
  }
  return DensityMatrix(make_hermitian_unchecked(std::move(rho)));
}

DensityMatrix local_measurement(const DensityMatrix& rho, const std::vector<HermitianMatrix>& projections,
                                BipartiteDims dims, Party party) {
  validate_resolution(projections);
  if (rho.dim() != dims.total()) throw ValidationError("local_measurement: state does not match dims");
  ComplexMatrix out(rho.dim(), rho.dim());
  for (const HermitianMatrix& p : projections) {
    const ComplexMatrix lifted = embed(p, dims, party).matrix();
    out += lifted * rho.matrix() * lifted;
  }
  return DensityMatrix(make_hermitian_unchecked(std::move(out)));
}

bool is_semi_quantum(const DensityMatrix& rho, const std::vector<HermitianMatrix>& projections,
                     BipartiteDims dims, Party party, double tol) {
  const DensityMatrix measured = local_measurement(rho, projections, dims, party);
  return (measured.matrix() - rho.matrix()).frobenius_norm() <= tol;
}

double superadditivity_gap(const DensityMatrix& rho, const HermitianMatrix& a, const HermitianMatrix& b,
                           BipartiteDims dims, const MonotoneFunction& f, const SkewOptions& opts) {
  if (a.dim() != dims.n1 || b.dim() != dims.n2 || rho.dim() != dims.total()) {
    throw ValidationError("superadditivity_gap: dimensions do not match");
  }
  const DensityMatrix rho1 = partial_trace(rho, dims, Party::First);
  const DensityMatrix rho2 = partial_trace(rho, dims, Party::Second);
  const double joint = skew_information(rho, aggregate(a, b, Sign::Plus), f, opts).value;
  const double first = skew_information(rho1, a, f, opts).value;
  const double second = skew_information(rho2, b, f, opts).value;
  if (opts.compensated) {
    CompensatedSum acc;
    acc.add(joint);
    acc.add(-first);
    acc.add(-second);
    return acc.value();
  }
  return joint - first - second;
}

double cross_term(const DensityMatrix& rho, const HermitianMatrix& a, const HermitianMatrix& b,
                  BipartiteDims dims, const MonotoneFunction& f, const SkewOptions& opts) {
  return commutator_inner(rho, embed(a, dims, Party::First), embed(b, dims, Party::Second), f, opts).real();
}

double cross_term_semi_quantum(const SemiQuantumSpec& spec, const HermitianMatrix& a,
                               const HermitianMatrix& b, const MonotoneFunction& f,
                               const SkewOptions& opts) {
  spec.validate();
  const BipartiteDims d = spec.dims();
  if (a.dim() != d.n1 || b.dim() != d.n2) throw ValidationError("cross_term_semi_quantum: dimensions");
  const MetricKernel k(f, opts.eigenvalue_floor);

  // Product eigenvectors e_i (x) q_ij with eigenvalues p_i lambda_ij.
  struct Mode {
    std::size_t i;
    std::size_t j;
    double eigenvalue;
  };
  std::vector<std::vector<cplx>> e;
  for (const HermitianMatrix& p : spec.projections) e.push_back(range_vector(p));
  std::vector<Mode> modes;
  for (std::size_t i = 0; i < d.n1; ++i)
    for (std::size_t j = 0; j < d.n2; ++j) {
      const double l = std::max(spec.party2_states[i].spectrum().eigenvalues[j], 0.0);
      modes.push_back({i, j, spec.probabilities[i] * l});
    }

  // <e_i | A | e_i'> and <e_i | e_i'>.
  auto first_party = [&](const ComplexMatrix* op, std::size_t i, std::size_t i2) {
    cplx acc = 0.0;
    for (std::size_t r = 0; r < d.n1; ++r) {
      cplx col = 0.0;
      if (op) {
        for (std::size_t c = 0; c < d.n1; ++c) col += (*op)(r, c) * e[i2][c];
      } else {
        col = e[i2][r];
      }
      acc += std::conj(e[i][r]) * col;
    }
    return acc;
  };
  // <q_ij | B | q_i'j'> and <q_ij | q_i'j'>.
  auto second_party = [&](const ComplexMatrix* op, const Mode& m, const Mode& m2) {
    const ComplexMatrix& q = spec.party2_states[m.i].spectrum().vectors;
    const ComplexMatrix& q2 = spec.party2_states[m2.i].spectrum().vectors;
    cplx acc = 0.0;
    for (std::size_t r = 0; r < d.n2; ++r) {
      cplx col = 0.0;
      if (op) {
        for (std::size_t c = 0; c < d.n2; ++c) col += (*op)(r, c) * q2(c, m2.j);
      } else {
        col = q2(r, m2.j);
      }
      acc += std::conj(q(r, m.j)) * col;
    }
    return acc;
  };

  CompensatedSum acc;
  for (const Mode& m : modes) {
    for (const Mode& m2 : modes) {
      const cplx x = first_party(&a.matrix(), m.i, m2.i) * second_party(nullptr, m, m2);
      const cplx y = first_party(nullptr, m.i, m2.i) * second_party(&b.matrix(), m, m2);
      const cplx prod = std::conj(x) * y;
      if (prod == cplx{}) continue;
      acc.add(k.c_hat(m.eigenvalue, m2.eigenvalue) * prod.real());
    }
  }
  return acc.value();
}

double parallelogram_residual(const DensityMatrix& rho, const HermitianMatrix& a,
                              const HermitianMatrix& b, BipartiteDims dims,
                              const MonotoneFunction& f, const SkewOptions& opts) {
  if (a.dim() != dims.n1 || b.dim() != dims.n2) throw ValidationError("parallelogram_residual: dimensions");
  const double plus = skew_information(rho, aggregate(a, b, Sign::Plus), f, opts).value;
  const double minus = skew_information(rho, aggregate(a, b, Sign::Minus), f, opts).value;
  const double left = skew_information(rho, embed(a, dims, Party::First), f, opts).value;
  const double right = skew_information(rho, embed(b, dims, Party::Second), f, opts).value;
  return std::abs(plus + minus - 2.0 * (left + right));
}

}  // namespace qig
