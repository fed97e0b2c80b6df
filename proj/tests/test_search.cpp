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

#include <doctest.h>

#include <cmath>

#include "qig/errors.hpp"
#include "qig/random.hpp"
#include "qig/search.hpp"
#include "test_helpers.hpp"

using namespace qig;
using qig::test::max_diff;

namespace {

std::vector<double> random_point(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> x(n);
  for (double& v : x) v = rng.normal();
  return x;
}

SearchOptions small(Constraint c, std::size_t budget = 2000) {
  SearchOptions o;
  o.budget = budget;
  o.restarts = 4;
  o.seed = 11;
  o.constraint = c;
  return o;
}

}  // namespace

TEST_CASE("constraint names") {
  for (Constraint c : {Constraint::None, Constraint::SemiQuantum, Constraint::Product})
    CHECK(parse_constraint(to_string(c)) == c);
  CHECK_THROWS_AS(parse_constraint("entangled"), ValidationError);
}

TEST_CASE("parameter counts") {
  CHECK(parameter_count({2, 2}, Constraint::None) == 32 + 4 + 4);
  CHECK(parameter_count({2, 3}, Constraint::Product) == 8 + 18 + 4 + 9);
  CHECK(parameter_count({2, 3}, Constraint::SemiQuantum) == 2 + 4 + 2 * 18 + 4 + 9);
}

TEST_CASE("decoding the origin") {
  const BipartiteDims d{2, 3};
  for (Constraint c : {Constraint::None, Constraint::SemiQuantum, Constraint::Product}) {
    const std::vector<double> zero(parameter_count(d, c), 0.0);
    const DecodedPoint p = decode(zero, d, c);
    CAPTURE(to_string(c));
    CHECK(max_diff(p.state.matrix(), DensityMatrix::maximally_mixed(6).matrix()) <= 1e-15);
    CHECK(p.a.matrix().max_abs() == 0.0);
    CHECK(p.b.matrix().max_abs() == 0.0);
  }
}

TEST_CASE("decoded points are valid") {
  for (BipartiteDims d : {BipartiteDims{2, 2}, BipartiteDims{2, 3}, BipartiteDims{3, 3}}) {
    for (Constraint c : {Constraint::None, Constraint::SemiQuantum, Constraint::Product}) {
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const DecodedPoint p = decode(random_point(parameter_count(d, c), seed), d, c);
        CAPTURE(to_string(c));
        CHECK(p.state.dim() == d.total());
        CHECK(std::abs(p.state.hermitian().trace() - 1.0) <= 1e-12);
        CHECK(p.state.spectrum().min() >= 0.9 * kDecodeMix / static_cast<double>(d.total()));
        CHECK(std::abs(p.a.matrix().frobenius_norm() - 1.0) <= 1e-12);
        CHECK(std::abs(p.b.matrix().frobenius_norm() - 1.0) <= 1e-12);
        if (c == Constraint::Product) {
          const DensityMatrix r1 = partial_trace(p.state, d, Party::First);
          const DensityMatrix r2 = partial_trace(p.state, d, Party::Second);
          CHECK(max_diff(p.state.matrix(), kron(r1.matrix(), r2.matrix())) <= 1e-14);
        }
        if (c == Constraint::SemiQuantum) {
          // The first party is block diagonal in its reduced eigenbasis.
          const MonotoneFunction f = MonotoneFunction::wyd(0.5);
          const HermitianMatrix a = random_observable(d.n1, seed);
          const HermitianMatrix b = random_observable(d.n2, seed + 100);
          CHECK(std::abs(cross_term(p.state, a, b, d, f)) <= 1e-10);
        }
      }
    }
  }
  CHECK_THROWS_AS(decode(std::vector<double>(3, 0.0), {2, 2}, Constraint::None), ValidationError);
}

TEST_CASE("product-constrained search finds no gap") {
  const SearchResult r = violation_search(MonotoneFunction::wyd(0.5), {2, 2}, small(Constraint::Product));
  CHECK(std::abs(r.best_gap) <= 1e-8);
  CHECK(r.reverified);
  CHECK_FALSE(r.violation());
  CHECK(r.evaluations == 2000);
  CHECK(r.constraint == Constraint::Product);
}

TEST_CASE("semi-quantum search respects superadditivity") {
  for (const char* id : {"wyd:0.5", "bures", "kubo"}) {
    const SearchResult r = violation_search(MonotoneFunction::parse(id), {2, 3}, small(Constraint::SemiQuantum));
    CAPTURE(id);
    CHECK(r.best_gap >= -1e-9);
    CHECK(r.reverified);
  }
}

TEST_CASE("search bookkeeping") {
  SearchOptions o = small(Constraint::None, 1203);
  const SearchResult r = violation_search(MonotoneFunction::wyd(0.3), {2, 2}, o);
  CHECK(r.evaluations == 1203);
  CHECK(r.incumbent_history.size() == o.restarts);
  double best = std::numeric_limits<double>::infinity();
  for (const std::vector<double>& h : r.incumbent_history) {
    REQUIRE_FALSE(h.empty());
    for (std::size_t i = 1; i < h.size(); ++i) CHECK(h[i] < h[i - 1]);
    best = std::min(best, h.back());
  }
  CHECK(r.best_gap == best);
  CHECK(r.metric_id == "wyd:0.3");
  CHECK(r.reverified);
  CHECK(std::abs(r.reverified_gap - r.best_gap) <= 1e-8);

  const SearchResult again = violation_search(MonotoneFunction::wyd(0.3), {2, 2}, o);
  CHECK(again.best_gap == r.best_gap);
  o.threads = 3;
  CHECK(violation_search(MonotoneFunction::wyd(0.3), {2, 2}, o).best_gap == r.best_gap);

  o.budget = 2;
  CHECK_THROWS_AS(violation_search(MonotoneFunction::wyd(0.3), {2, 2}, o), ValidationError);
}

TEST_CASE("reverify rejects a tampered result") {
  SearchResult r = violation_search(MonotoneFunction::bures(), {2, 2}, small(Constraint::None, 400));
  REQUIRE(r.reverified);
  r.best_gap -= 1e-3;
  const SearchResult checked = reverify(r);
  CHECK_FALSE(checked.reverified);
  CHECK_FALSE(checked.violation());
  r.metric_id = "wyd:7";
  CHECK_FALSE(reverify(r).reverified);
}
