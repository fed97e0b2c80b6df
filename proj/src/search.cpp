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

#include "qig/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "qig/errors.hpp"
#include "qig/random.hpp"
#include "qig/skew.hpp"

namespace qig {

namespace {

constexpr double kReverifyTolerance = 1e-8;
constexpr double kInitialStep = 0.5;
constexpr double kMinStep = 1e-9;
constexpr double kMaxStep = 8.0;

std::size_t complex_block(std::size_t n) { return 2 * n * n; }
std::size_t hermitian_block(std::size_t n) { return n * n; }

// Reads parameters front to back.
class Cursor {
 public:
  explicit Cursor(std::span<const double> x) : x_(x) {}
  std::span<const double> take(std::size_t n) {
    auto out = x_.subspan(pos_, n);
    pos_ += n;
    return out;
  }

 private:
  std::span<const double> x_;
  std::size_t pos_ = 0;
};

HermitianMatrix hermitian_from(std::span<const double> p, std::size_t n) {
  ComplexMatrix m(n, n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) m(i, i) = p[k++];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx v(p[k], p[k + 1]);
      k += 2;
      m(i, j) = v;
      m(j, i) = std::conj(v);
    }
  return make_hermitian_unchecked(std::move(m));
}

HermitianMatrix unit_observable(std::span<const double> p, std::size_t n) {
  const HermitianMatrix h = hermitian_from(p, n);
  const double norm = h.matrix().frobenius_norm();
  return norm > 0.0 ? (1.0 / norm) * h : h;
}

// G G^dagger / Tr(G G^dagger), or I/n when G = 0.
HermitianMatrix normalized_gram(std::span<const double> p, std::size_t n) {
  ComplexMatrix g(n, n);
  for (std::size_t i = 0; i < n * n; ++i) g(i / n, i % n) = cplx(p[2 * i], p[2 * i + 1]);
  ComplexMatrix w = g * g.adjoint();
  const double tr = w.trace().real();
  if (!(tr > 0.0)) return (1.0 / static_cast<double>(n)) * HermitianMatrix::identity(n);
  return make_hermitian_unchecked(w * cplx(1.0 / tr));
}

DensityMatrix mixed_state(std::span<const double> p, std::size_t n) {
  const HermitianMatrix flat = (1.0 / static_cast<double>(n)) * HermitianMatrix::identity(n);
  return DensityMatrix((1.0 - kDecodeMix) * normalized_gram(p, n) + kDecodeMix * flat);
}

// exp(iH) for Hermitian H.
ComplexMatrix unitary_from(const HermitianMatrix& h) {
  const Spectrum s = hermitian_eigen(h);
  const std::size_t n = h.dim();
  ComplexMatrix phases(n, n);
  for (std::size_t i = 0; i < n; ++i) phases(i, i) = std::polar(1.0, s.eigenvalues[i]);
  return s.vectors * phases * s.vectors.adjoint();
}

SemiQuantumSpec semi_quantum_from(Cursor& cur, BipartiteDims dims) {
  SemiQuantumSpec spec;
  const auto w = cur.take(dims.n1);
  double total = 0.0;
  for (double v : w) total += v * v;
  for (double v : w) {
    spec.probabilities.push_back(total > 0.0 ? v * v / total : 1.0 / static_cast<double>(dims.n1));
  }
  const ComplexMatrix u = unitary_from(hermitian_from(cur.take(hermitian_block(dims.n1)), dims.n1));
  for (std::size_t i = 0; i < dims.n1; ++i) {
    ComplexMatrix proj(dims.n1, dims.n1);
    for (std::size_t r = 0; r < dims.n1; ++r)
      for (std::size_t c = 0; c < dims.n1; ++c) proj(r, c) = u(r, i) * std::conj(u(c, i));
    spec.projections.push_back(make_hermitian_unchecked(std::move(proj)));
  }
  for (std::size_t i = 0; i < dims.n1; ++i) {
    spec.party2_states.emplace_back(normalized_gram(cur.take(complex_block(dims.n2)), dims.n2));
  }
  return spec.mixed_with_identity(kDecodeMix);
}

double objective(std::span<const double> x, const MonotoneFunction& f, BipartiteDims dims, Constraint c) {
  try {
    const DecodedPoint d = decode(x, dims, c);
    const double gap = superadditivity_gap(d.state, d.a, d.b, dims, f);
    return std::isfinite(gap) ? gap : std::numeric_limits<double>::infinity();
  } catch (const std::exception&) {
    return std::numeric_limits<double>::infinity();
  }
}

struct RestartOutcome {
  std::vector<double> best_x;
  double best_gap = std::numeric_limits<double>::infinity();
  std::size_t evaluations = 0;
  std::vector<double> history;
};

RestartOutcome run_restart(const MonotoneFunction& f, BipartiteDims dims, Constraint c, std::size_t budget,
                           std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t dim = parameter_count(dims, c);
  RestartOutcome out;
  std::vector<double> x(dim);
  for (double& v : x) v = rng.normal();
  double fx = objective(x, f, dims, c);
  out.evaluations = 1;
  out.history.push_back(fx);
  double step = kInitialStep;
  std::vector<double> dir(dim);
  std::vector<double> cand(dim);
  while (out.evaluations < budget) {
    double norm2 = 0.0;
    for (double& v : dir) {
      v = rng.normal();
      norm2 += v * v;
    }
    const double scale = step / std::sqrt(std::max(norm2, 1e-300));
    bool improved = false;
    for (double sign : {1.0, -1.0}) {
      if (out.evaluations >= budget) break;
      for (std::size_t i = 0; i < dim; ++i) cand[i] = x[i] + sign * scale * dir[i];
      const double fc = objective(cand, f, dims, c);
      ++out.evaluations;
      if (fc < fx) {
        x.swap(cand);
        fx = fc;
        out.history.push_back(fx);
        improved = true;
        break;
      }
    }
    step = improved ? std::min(step * 1.5, kMaxStep) : step * 0.8;
    if (step < kMinStep) step = kInitialStep;
  }
  out.best_x = x;
  out.best_gap = fx;
  return out;
}

}  // namespace

Constraint parse_constraint(const std::string& text) {
  if (text == "none") return Constraint::None;
  if (text == "semiquantum") return Constraint::SemiQuantum;
  if (text == "product") return Constraint::Product;
  throw ValidationError("unknown constraint '" + text + "' (expected none, semiquantum or product)");
}

std::string to_string(Constraint c) {
  switch (c) {
    case Constraint::None:
      return "none";
    case Constraint::SemiQuantum:
      return "semiquantum";
    case Constraint::Product:
      return "product";
  }
  return "none";
}

std::size_t parameter_count(BipartiteDims dims, Constraint constraint) {
  const std::size_t observables = hermitian_block(dims.n1) + hermitian_block(dims.n2);
  switch (constraint) {
    case Constraint::None:
      return complex_block(dims.total()) + observables;
    case Constraint::Product:
      return complex_block(dims.n1) + complex_block(dims.n2) + observables;
    case Constraint::SemiQuantum:
      return dims.n1 + hermitian_block(dims.n1) + dims.n1 * complex_block(dims.n2) + observables;
  }
  return 0;
}

DecodedPoint decode(std::span<const double> x, BipartiteDims dims, Constraint constraint) {
  if (x.size() != parameter_count(dims, constraint)) {
    throw ValidationError("decode: parameter vector has length " + std::to_string(x.size()) + ", expected " +
                          std::to_string(parameter_count(dims, constraint)));
  }
  Cursor cur(x);
  DensityMatrix state;
  switch (constraint) {
    case Constraint::None:
      state = mixed_state(cur.take(complex_block(dims.total())), dims.total());
      break;
    case Constraint::Product: {
      const DensityMatrix r1 = mixed_state(cur.take(complex_block(dims.n1)), dims.n1);
      const DensityMatrix r2 = mixed_state(cur.take(complex_block(dims.n2)), dims.n2);
      state = DensityMatrix(kron(r1.hermitian(), r2.hermitian()));
      break;
    }
    case Constraint::SemiQuantum:
      state = semi_quantum_state(semi_quantum_from(cur, dims));
      break;
  }
  HermitianMatrix a = unit_observable(cur.take(hermitian_block(dims.n1)), dims.n1);
  HermitianMatrix b = unit_observable(cur.take(hermitian_block(dims.n2)), dims.n2);
  return {std::move(state), std::move(a), std::move(b)};
}

SearchResult violation_search(const MonotoneFunction& f, BipartiteDims dims, const SearchOptions& opts) {
  if (opts.restarts < 1 || opts.budget < opts.restarts) {
    throw ValidationError("violation_search: need budget >= restarts >= 1");
  }
  std::vector<RestartOutcome> outcomes(opts.restarts);
  auto work = [&](std::size_t r) {
    const std::size_t share = opts.budget / opts.restarts + (r < opts.budget % opts.restarts ? 1 : 0);
    outcomes[r] = run_restart(f, dims, opts.constraint, share, derive_seed(opts.seed, "restart", r));
  };
  std::size_t threads = opts.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : opts.threads;
  threads = std::min(threads, opts.restarts);
  if (threads <= 1) {
    for (std::size_t r = 0; r < opts.restarts; ++r) work(r);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < threads; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t r = w; r < opts.restarts; r += threads) work(r);
      });
    for (std::thread& t : pool) t.join();
  }

  std::size_t best = 0;
  for (std::size_t r = 1; r < outcomes.size(); ++r)
    if (outcomes[r].best_gap < outcomes[best].best_gap) best = r;

  SearchResult result;
  const DecodedPoint point = decode(outcomes[best].best_x, dims, opts.constraint);
  result.best_gap = outcomes[best].best_gap;
  result.state = point.state;
  result.a = point.a;
  result.b = point.b;
  result.metric_id = f.id();
  result.dims = dims;
  result.constraint = opts.constraint;
  for (RestartOutcome& o : outcomes) {
    result.evaluations += o.evaluations;
    result.incumbent_history.push_back(std::move(o.history));
  }
  return reverify(std::move(result));
}

SearchResult reverify(SearchResult result) {
  SkewOptions tight;
  tight.eigenvalue_floor = 1e-14;
  tight.compensated = true;
  try {
    result.reverified_gap = superadditivity_gap(result.state, result.a, result.b, result.dims,
                                                MonotoneFunction::parse(result.metric_id), tight);
    result.reverified = std::abs(result.reverified_gap - result.best_gap) <= kReverifyTolerance;
  } catch (const std::exception&) {
    result.reverified_gap = std::numeric_limits<double>::quiet_NaN();
    result.reverified = false;
  }
  return result;
}

}  // namespace qig
