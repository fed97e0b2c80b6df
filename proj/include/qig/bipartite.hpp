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

#ifndef QIG_BIPARTITE_HPP
#define QIG_BIPARTITE_HPP

#include <vector>

#include "qig/linalg.hpp"
#include "qig/metric.hpp"
#include "qig/skew.hpp"

namespace qig {

enum class Sign { Plus, Minus };

/// A (x) 1 when `party` is First, 1 (x) A when it is Second.
HermitianMatrix embed(const HermitianMatrix& a, BipartiteDims dims, Party party);

/// X^{+/-} = A (x) 1 +/- 1 (x) B.
HermitianMatrix aggregate(const HermitianMatrix& a, const HermitianMatrix& b, Sign sign);

/// Checks that `projections` are rank-one, mutually orthogonal and sum to the
/// identity, to 1e-11. Throws ValidationError otherwise.
void validate_resolution(const std::vector<HermitianMatrix>& projections);

/// Semi-quantum state sum_i p_i P_i (x) rho_i, measured on the first party.
struct SemiQuantumSpec {
  std::vector<double> probabilities;
  std::vector<HermitianMatrix> projections;
  std::vector<DensityMatrix> party2_states;

  BipartiteDims dims() const;
  void validate() const;
  /// (1 - delta) rho + delta I / n, written again in semi-quantum form.
  SemiQuantumSpec mixed_with_identity(double delta) const;
};

DensityMatrix semi_quantum_state(const SemiQuantumSpec& spec);

/// sum_i (P_i (x) 1) rho (P_i (x) 1), or the analogue on the second party.
DensityMatrix local_measurement(const DensityMatrix& rho, const std::vector<HermitianMatrix>& projections,
                                BipartiteDims dims, Party party);

/// ||P(rho) - rho||_F <= tol.
bool is_semi_quantum(const DensityMatrix& rho, const std::vector<HermitianMatrix>& projections,
                     BipartiteDims dims, Party party, double tol = 1e-10);

/// I_rho(A (x) 1 + 1 (x) B) - I_{rho_1}(A) - I_{rho_2}(B).
double superadditivity_gap(const DensityMatrix& rho, const HermitianMatrix& a, const HermitianMatrix& b,
                           BipartiteDims dims, const MonotoneFunction& f, const SkewOptions& opts = {});

/// Re K_rho(i[rho, A (x) 1], i[rho, 1 (x) B]), from the eigenbasis of rho.
double cross_term(const DensityMatrix& rho, const HermitianMatrix& a, const HermitianMatrix& b,
                  BipartiteDims dims, const MonotoneFunction& f, const SkewOptions& opts = {});

/// The same cross term evaluated on the product spectral resolution
/// rho = sum_ij p_i lambda_ij P_i (x) Q_ij built from the semi-quantum
/// structure, without diagonalizing rho.
double cross_term_semi_quantum(const SemiQuantumSpec& spec, const HermitianMatrix& a,
                               const HermitianMatrix& b, const MonotoneFunction& f,
                               const SkewOptions& opts = {});

/// |I(X+) + I(X-) - 2 (I(A (x) 1) + I(1 (x) B))|.
double parallelogram_residual(const DensityMatrix& rho, const HermitianMatrix& a,
                              const HermitianMatrix& b, BipartiteDims dims,
                              const MonotoneFunction& f, const SkewOptions& opts = {});

}  // namespace qig

#endif  // QIG_BIPARTITE_HPP
