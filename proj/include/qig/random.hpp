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

#ifndef QIG_RANDOM_HPP
#define QIG_RANDOM_HPP

#include <cstdint>
#include <random>
#include <string_view>

#include "qig/bipartite.hpp"
#include "qig/linalg.hpp"

namespace qig {

/// Seeded source of the Gaussian and uniform variates used by the generators.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  cplx complex_normal() { return {normal_(engine_), normal_(engine_)}; }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_); }
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);
/// Deterministic seed for one trial of one check.
std::uint64_t derive_seed(std::uint64_t base, std::string_view key, std::uint64_t index);

/// n x n matrix of independent standard complex Gaussians.
ComplexMatrix ginibre(std::size_t n, Rng& rng);
/// Haar-distributed unitary from Gram-Schmidt on a Ginibre matrix.
ComplexMatrix random_unitary(std::size_t n, Rng& rng);

/// G G^dagger / Tr(G G^dagger), mixed with delta I / n just enough to lift the
/// smallest eigenvalue to `min_eig_floor`.
DensityMatrix random_density(std::size_t n, double min_eig_floor, Rng& rng);
DensityMatrix random_density(std::size_t n, double min_eig_floor, std::uint64_t seed);

DensityMatrix random_pure_state(std::size_t n, Rng& rng);

/// (G + G^dagger) / 2.
HermitianMatrix random_observable(std::size_t n, Rng& rng);
HermitianMatrix random_observable(std::size_t n, std::uint64_t seed);

/// U diag(lambda) U^dagger with lambda uniform in [lo, hi] and U Haar.
HermitianMatrix random_positive(std::size_t n, double lo, double hi, Rng& rng);

/// Flat-simplex probabilities, projections onto a Haar-rotated computational
/// basis of the first party, Ginibre states on the second.
SemiQuantumSpec random_semi_quantum(BipartiteDims dims, Rng& rng);

/// (1 - delta) rho + delta I / n.
DensityMatrix mix_with_identity(const DensityMatrix& rho, double delta);

}  // namespace qig

#endif  // QIG_RANDOM_HPP
