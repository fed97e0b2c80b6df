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
#include "qig/skew.hpp"
#include "test_helpers.hpp"

using namespace qig;
using qig::test::diag_state;
using qig::test::sigma_x;
using qig::test::sigma_z;

namespace {

std::vector<MonotoneFunction> regular_catalog() {
  std::vector<MonotoneFunction> out;
  for (const MonotoneFunction& f : default_catalog())
    if (f.regular()) out.push_back(f);
  return out;
}

double qubit_closed_form(double a, double p) {
  const double b = 1.0 - a;
  return (std::pow(a, p) - std::pow(b, p)) * (std::pow(a, 1.0 - p) - std::pow(b, 1.0 - p));
}

}  // namespace

TEST_CASE("observables commuting with the state carry no skew information") {
  const DensityMatrix rho = diag_state({0.5, 0.3, 0.2});
  const HermitianMatrix a = HermitianMatrix::diagonal(std::vector<double>{1.0, -2.0, 0.5});
  for (const MonotoneFunction& f : default_catalog()) {
    CAPTURE(f.id());
    CHECK(skew_information(rho, a, f).value == 0.0);
  }
}

TEST_CASE("pure state gives the variance for regular metrics") {
  const std::vector<cplx> psi{1.0, 0.0};
  const DensityMatrix rho = DensityMatrix::pure(psi);
  for (const MonotoneFunction& f : regular_catalog()) {
    CAPTURE(f.id());
    const SkewResult r = skew_information(rho, sigma_x(), f);
    CHECK(std::abs(r.value - 1.0) <= 1e-12);
    CHECK(r.regular_branch);
    CHECK(r.rank_used == 1);
    CHECK(r.metric_id == f.id());
  }
  CHECK(variance(rho, sigma_x()) == doctest::Approx(1.0));
}

TEST_CASE("non-regular metrics reject singular states") {
  const std::vector<cplx> psi{1.0, 0.0};
  const DensityMatrix rho = DensityMatrix::pure(psi);
  CHECK_THROWS_AS(skew_information(rho, sigma_x(), MonotoneFunction::kubo()), SingularMetricError);
  CHECK_THROWS_AS(skew_information(rho, sigma_x(), MonotoneFunction::wyd(1.5)), SingularMetricError);
  CHECK_THROWS_AS(wyd_trace_oracle(rho, sigma_x(), 1.5), SingularMetricError);
  const DensityMatrix near = diag_state({1.0 - 1e-13, 1e-13});
  CHECK_THROWS_AS(skew_information(near, sigma_x(), MonotoneFunction::harmonic()), SingularMetricError);
  SkewOptions loose;
  loose.eigenvalue_floor = 1e-14;
  CHECK_NOTHROW(skew_information(near, sigma_x(), MonotoneFunction::harmonic(), loose));
}

TEST_CASE("dimension mismatch is a validation error") {
  const DensityMatrix rho = DensityMatrix::maximally_mixed(3);
  CHECK_THROWS_AS(skew_information(rho, sigma_x(), MonotoneFunction::bures()), ValidationError);
  CHECK_THROWS_AS(wyd_trace_oracle(rho, sigma_x(), 0.5), ValidationError);
}

TEST_CASE("oracle range") {
  const DensityMatrix rho = diag_state({0.7, 0.3});
  for (double p : {0.0, 1.0, -0.5, 2.5}) {
    CAPTURE(p);
    CHECK_THROWS_AS(wyd_trace_oracle(rho, sigma_x(), p), UnsupportedParameter);
  }
}

TEST_CASE("Wigner-Yanase value on a diagonal qubit") {
  const DensityMatrix rho = diag_state({0.9, 0.1});
  const MonotoneFunction f = MonotoneFunction::wyd(0.5);
  CHECK(std::abs(skew_information(rho, sigma_x(), f).value - 0.4) <= 1e-14);
  CHECK(std::abs(wyd_trace_oracle(rho, sigma_x(), 0.5) - 0.4) <= 1e-14);
}

TEST_CASE("diagonal qubit closed form across the bounded family") {
  for (double a : {0.6, 0.75, 0.9}) {
    for (int i = 1; i <= 9; ++i) {
      const double p = i / 10.0;
      CAPTURE(a);
      CAPTURE(p);
      const DensityMatrix rho = diag_state({a, 1.0 - a});
      const double expected = qubit_closed_form(a, p);
      const double got = skew_information(rho, sigma_x(), MonotoneFunction::wyd(p)).value;
      CHECK(std::abs(got - expected) <= 1e-10 * std::abs(expected));
    }
  }
}

TEST_CASE("diagonal qubit closed form in the extended family") {
  for (double p : {1.1, 1.5, 2.0}) {
    const double a = 0.9;
    const DensityMatrix rho = diag_state({a, 1.0 - a});
    // Tr [rho^p, X][rho^(1-p), X] = -2 (a^p - b^p)(a^(1-p) - b^(1-p)).
    const double expected = 2.0 * qubit_closed_form(a, p) / (p * (1.0 - p));
    CAPTURE(p);
    CHECK(expected > 0.0);
    const double spectral = skew_information(rho, sigma_x(), MonotoneFunction::wyd(p)).value;
    const double oracle = wyd_trace_oracle(rho, sigma_x(), p);
    CHECK(std::abs(spectral - expected) <= 1e-9 * expected);
    CHECK(std::abs(oracle - expected) <= 1e-9 * expected);
  }
}

TEST_CASE("trace oracle agrees with the spectral sum on random states") {
  Rng rng(7);
  for (double p : {0.1, 0.3, 0.5, 0.9, 1.1, 1.5, 2.0}) {
    for (std::size_t n : {2u, 3u, 4u, 6u}) {
      for (int trial = 0; trial < 10; ++trial) {
        const DensityMatrix rho = random_density(n, 1e-3, rng);
        const HermitianMatrix a = random_observable(n, rng);
        const double spectral = skew_information(rho, a, MonotoneFunction::wyd(p)).value;
        const double oracle = wyd_trace_oracle(rho, a, p);
        CAPTURE(p);
        CAPTURE(n);
        CHECK(std::abs(spectral - oracle) <= 1e-9 * (1.0 + std::abs(oracle)));
      }
    }
  }
}

TEST_CASE("metric inner product on commuting diagonal operators") {
  const double a = 0.3;
  const DensityMatrix rho = diag_state({a, 1.0 - a});
  const ComplexMatrix d = ComplexMatrix::diagonal(std::vector<double>{2.0, -0.5});
  for (const MonotoneFunction& f : default_catalog()) {
    CAPTURE(f.id());
    const MetricKernel k(f);
    const cplx v = metric_inner(rho, d, d, k);
    const double expected = 4.0 / a + 0.25 / (1.0 - a);
    CHECK(std::abs(v.real() - expected) <= 1e-12 * expected);
    CHECK(v.imag() == 0.0);
  }
}

TEST_CASE("metric inner product is a positive sesquilinear form") {
  Rng rng(11);
  for (const MonotoneFunction& f : default_catalog()) {
    const MetricKernel k(f);
    for (int trial = 0; trial < 5; ++trial) {
      const std::size_t n = 3;
      const DensityMatrix rho = random_density(n, 1e-2, rng);
      const ComplexMatrix a = ginibre(n, rng);
      const ComplexMatrix b = ginibre(n, rng);
      const ComplexMatrix c = ginibre(n, rng);
      CAPTURE(f.id());
      const cplx aa = metric_inner(rho, a, a, k);
      CHECK(aa.real() > 0.0);
      CHECK(std::abs(aa.imag()) <= 1e-11 * aa.real());
      const cplx lhs = metric_inner(rho, a, b + c, k);
      const cplx rhs = metric_inner(rho, a, b, k) + metric_inner(rho, a, c, k);
      CHECK(std::abs(lhs - rhs) <= 1e-11 * (1.0 + std::abs(lhs)));
      const cplx s{0.3, -1.2};
      CHECK(std::abs(metric_inner(rho, s * a, b, k) - std::conj(s) * metric_inner(rho, a, b, k)) <=
            1e-11 * (1.0 + std::abs(lhs)));
      CHECK(std::abs(metric_inner(rho, b, a, k) - std::conj(metric_inner(rho, a, b, k))) <=
            1e-11 * (1.0 + std::abs(lhs)));
    }
  }
}

TEST_CASE("skew information is a commutator norm") {
  Rng rng(5);
  for (const MonotoneFunction& f : default_catalog()) {
    const DensityMatrix rho = random_density(4, 1e-2, rng);
    const HermitianMatrix a = random_observable(4, rng);
    const MetricKernel k(f);
    const HermitianMatrix comm = commutator_i(rho, a);
    const double norm = metric_inner(rho, comm.matrix(), comm.matrix(), k).real();
    const double expected = f.regular() ? 0.5 * f.metric_constant() * norm : norm;
    const double got = skew_information(rho, a, f).value;
    CAPTURE(f.id());
    CHECK(std::abs(got - expected) <= 1e-10 * (1.0 + expected));
    CHECK(std::abs(commutator_inner(rho, a, a, f).real() - norm) <= 1e-10 * (1.0 + norm));
  }
}

TEST_CASE("bounds, convexity and scale covariance on random states") {
  Rng rng(23);
  for (const MonotoneFunction& f : default_catalog()) {
    CAPTURE(f.id());
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t n = 2 + static_cast<std::size_t>(trial % 4);
      const double floor = f.regular() ? 0.0 : 1e-3;
      const DensityMatrix r1 = random_density(n, floor, rng);
      const DensityMatrix r2 = random_density(n, floor, rng);
      const HermitianMatrix a = random_observable(n, rng);
      const double i1 = skew_information(r1, a, f).value;
      const double i2 = skew_information(r2, a, f).value;
      CHECK(i1 >= -1e-10);
      if (f.regular()) CHECK(i1 <= variance(r1, a) + 1e-10);
      const double lambda = 0.1 * (1 + trial % 9);
      const double mixed = skew_information(DensityMatrix::mix(lambda, r1, r2), a, f).value;
      CHECK(mixed <= lambda * i1 + (1.0 - lambda) * i2 + 1e-9);
      const double c = -2.5;
      const double scaled = skew_information(r1, c * a, f).value;
      CHECK(std::abs(scaled - c * c * i1) <= 1e-11 * (1.0 + c * c * i1));
    }
  }
}

TEST_CASE("tensor additivity") {
  Rng rng(31);
  for (const MonotoneFunction& f : default_catalog()) {
    const DensityMatrix r1 = random_density(2, 1e-2, rng);
    const DensityMatrix r2 = random_density(3, 1e-2, rng);
    const HermitianMatrix a1 = random_observable(2, rng);
    const HermitianMatrix a2 = random_observable(3, rng);
    const DensityMatrix joint(kron(r1.hermitian(), r2.hermitian()));
    const HermitianMatrix sum = kron(a1, HermitianMatrix::identity(3)) + kron(HermitianMatrix::identity(2), a2);
    const double lhs = skew_information(joint, sum, f).value;
    const double rhs = skew_information(r1, a1, f).value + skew_information(r2, a2, f).value;
    CAPTURE(f.id());
    CHECK(std::abs(lhs - rhs) <= 1e-9 * (1.0 + rhs));
  }
}

TEST_CASE("time invariance under a commuting Hamiltonian") {
  Rng rng(37);
  const std::size_t n = 4;
  const DensityMatrix rho = random_density(n, 1e-2, rng);
  const HermitianMatrix a = random_observable(n, rng);
  // A polynomial in A commutes with A.
  const HermitianMatrix h = make_hermitian_unchecked(a.matrix() * a.matrix() + 0.7 * a.matrix());
  for (const MonotoneFunction& f : default_catalog()) {
    const double before = skew_information(rho, a, f).value;
    for (double t : {0.3, 1.7}) {
      const double after = skew_information(time_evolve(rho, h, t), a, f).value;
      CAPTURE(f.id());
      CHECK(std::abs(after - before) <= 1e-9);
    }
  }
}

TEST_CASE("rank-deficient states use the boundary rule") {
  const DensityMatrix rho = diag_state({0.6, 0.4, 0.0});
  HermitianMatrix a(ComplexMatrix(3, 3, {0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0}));
  const MonotoneFunction f = MonotoneFunction::wyd(0.5);
  // Only the (0, 2) pair contributes: (m/2) * 2 * c-hat(0.6, 0) = 0.6.
  const SkewResult r = skew_information(rho, a, f);
  CHECK(r.rank_used == 2);
  CHECK(std::abs(r.value - 0.6) <= 1e-14);
  CHECK(std::abs(wyd_trace_oracle(rho, a, 0.5) - 0.6) <= 1e-14);
}

TEST_CASE("compensated summation agrees with plain summation") {
  Rng rng(41);
  const DensityMatrix rho = random_density(6, 1e-3, rng);
  const HermitianMatrix a = random_observable(6, rng);
  SkewOptions comp;
  comp.compensated = true;
  for (const MonotoneFunction& f : default_catalog()) {
    const double plain = skew_information(rho, a, f).value;
    const double kahan = skew_information(rho, a, f, comp).value;
    CHECK(std::abs(plain - kahan) <= 1e-13 * (1.0 + plain));
  }
}
