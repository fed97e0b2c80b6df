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

#include "qig/random.hpp"

#include <cmath>

#include "qig/errors.hpp"

namespace qig {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::string_view key, std::uint64_t index) {
  // FNV-1a over the key.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : key) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return mix64(mix64(base ^ h) + index);
}

ComplexMatrix ginibre(std::size_t n, Rng& rng) {
  ComplexMatrix g(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) g(r, c) = rng.complex_normal();
  return g;
}

ComplexMatrix random_unitary(std::size_t n, Rng& rng) {
  ComplexMatrix q = ginibre(n, rng);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t prev = 0; prev < c; ++prev) {
      cplx dot = 0.0;
      for (std::size_t r = 0; r < n; ++r) dot += std::conj(q(r, prev)) * q(r, c);
      for (std::size_t r = 0; r < n; ++r) q(r, c) -= dot * q(r, prev);
    }
    double norm2 = 0.0;
    for (std::size_t r = 0; r < n; ++r) norm2 += std::norm(q(r, c));
    const double norm = std::sqrt(norm2);
    for (std::size_t r = 0; r < n; ++r) q(r, c) /= norm;
  }
  return q;
}

DensityMatrix mix_with_identity(const DensityMatrix& rho, double delta) {
  const double n = static_cast<double>(rho.dim());
  return DensityMatrix((1.0 - delta) * rho.hermitian() + (delta / n) * HermitianMatrix::identity(rho.dim()));
}

DensityMatrix random_density(std::size_t n, double min_eig_floor, Rng& rng) {
  if (n == 0) throw ValidationError("random_density: dimension must be positive");
  if (!(min_eig_floor >= 0.0 && min_eig_floor < 1.0 / static_cast<double>(n))) {
    throw ValidationError("random_density: floor must lie in [0, 1/n)");
  }
  const ComplexMatrix g = ginibre(n, rng);
  ComplexMatrix w = g * g.adjoint();
  const double tr = w.trace().real();
  w *= cplx(1.0 / tr);
  DensityMatrix rho(make_hermitian_unchecked(std::move(w)));
  const double lowest = rho.spectrum().min();
  if (lowest >= min_eig_floor) return rho;
  const double inv_n = 1.0 / static_cast<double>(n);
  // (1 - delta) lowest + delta / n = floor, plus a hair so rounding cannot undershoot.
  const double delta = std::min(1.0, (min_eig_floor - lowest) / (inv_n - lowest) * (1.0 + 1e-9));
  return mix_with_identity(rho, delta);
}

DensityMatrix random_density(std::size_t n, double min_eig_floor, std::uint64_t seed) {
  Rng rng(seed);
  return random_density(n, min_eig_floor, rng);
}

DensityMatrix random_pure_state(std::size_t n, Rng& rng) {
  std::vector<cplx> psi(n);
  for (cplx& x : psi) x = rng.complex_normal();
  return DensityMatrix::pure(psi);
}

HermitianMatrix random_observable(std::size_t n, Rng& rng) {
  const ComplexMatrix g = ginibre(n, rng);
  return make_hermitian_unchecked((g + g.adjoint()) * cplx(0.5));
}

HermitianMatrix random_observable(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return random_observable(n, rng);
}

HermitianMatrix random_positive(std::size_t n, double lo, double hi, Rng& rng) {
  const ComplexMatrix u = random_unitary(n, rng);
  std::vector<double> lambda(n);
  for (double& l : lambda) l = rng.uniform(lo, hi);
  return make_hermitian_unchecked(u * ComplexMatrix::diagonal(lambda) * u.adjoint());
}

SemiQuantumSpec random_semi_quantum(BipartiteDims dims, Rng& rng) {
  SemiQuantumSpec spec;
  double total = 0.0;
  for (std::size_t i = 0; i < dims.n1; ++i) {
    const double e = -std::log(rng.uniform(0.0, 1.0) + 1e-300);
    spec.probabilities.push_back(e);
    total += e;
  }
  for (double& p : spec.probabilities) p /= total;
  const ComplexMatrix u = random_unitary(dims.n1, rng);
  for (std::size_t i = 0; i < dims.n1; ++i) {
    std::vector<cplx> col(dims.n1);
    for (std::size_t r = 0; r < dims.n1; ++r) col[r] = u(r, i);
    spec.projections.push_back(DensityMatrix::pure(col).hermitian());
  }
  for (std::size_t i = 0; i < dims.n1; ++i) spec.party2_states.push_back(random_density(dims.n2, 0.0, rng));
  return spec;
}

}  // namespace qig
