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

#ifndef QIG_SEARCH_HPP
#define QIG_SEARCH_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qig/bipartite.hpp"
#include "qig/linalg.hpp"
#include "qig/metric.hpp"

namespace qig {

/// Feasible set of the search.
enum class Constraint { None, SemiQuantum, Product };

Constraint parse_constraint(const std::string& text);
std::string to_string(Constraint c);

/// Mixing weight of I/n in every decoded state; keeps spectra away from zero.
inline constexpr double kDecodeMix = 1e-6;

struct DecodedPoint {
  DensityMatrix state;
  HermitianMatrix a;
  HermitianMatrix b;
};

/// Number of real parameters a search point has for the given feasible set.
std::size_t parameter_count(BipartiteDims dims, Constraint constraint);

/// Maps a real parameter vector to a full-rank state and unit-Frobenius-norm
/// observables. None: state (1-delta) G G^dagger / Tr + delta I/n. Product:
/// the same construction on each factor. SemiQuantum: flat weights squared,
/// projections from exp(iH) columns, Ginibre second-party states.
DecodedPoint decode(std::span<const double> x, BipartiteDims dims, Constraint constraint = Constraint::None);

struct SearchResult {
  double best_gap = 0.0;
  DensityMatrix state;
  HermitianMatrix a;
  HermitianMatrix b;
  std::string metric_id;
  BipartiteDims dims;
  Constraint constraint = Constraint::None;
  std::size_t evaluations = 0;
  bool reverified = false;
  /// Gap recomputed by reverify.
  double reverified_gap = 0.0;
  /// Incumbent gaps at every improvement, per restart.
  std::vector<std::vector<double>> incumbent_history;

  /// A violation is only claimed once reverify agreed with the search.
  bool violation(double threshold = 1e-6) const { return reverified && best_gap < -threshold; }
};

struct SearchOptions {
  std::size_t budget = 200000;
  std::uint64_t seed = 1;
  std::size_t restarts = 8;
  Constraint constraint = Constraint::None;
  std::size_t threads = 1;
};

/// Multi-restart adaptive random-direction descent on the superadditivity gap.
SearchResult violation_search(const MonotoneFunction& f, BipartiteDims dims, const SearchOptions& opts);

/// Recomputes the gap with eigenvalue floor 1e-14 and compensated sums.
/// Results that disagree with best_gap by more than 1e-8 stay unverified.
SearchResult reverify(SearchResult result);

}  // namespace qig

#endif  // QIG_SEARCH_HPP
