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

#include "qig/checker.hpp"
#include "qig/errors.hpp"
#include "qig/metric.hpp"
#include "qig/random.hpp"

using namespace qig;

namespace {

std::vector<double> wyd_grid() {
  std::vector<double> ps;
  for (int i = 1; i <= 9; ++i) ps.push_back(-i / 10.0);
  for (int i = 1; i <= 9; ++i) ps.push_back(i / 10.0);
  for (int i = 11; i <= 20; ++i) ps.push_back(i / 10.0);
  ps.push_back(-1.0);
  return ps;
}

std::vector<MonotoneFunction> full_catalog() {
  std::vector<MonotoneFunction> out;
  for (double p : wyd_grid()) out.push_back(MonotoneFunction::wyd(p));
  out.push_back(MonotoneFunction::kubo());
  out.push_back(MonotoneFunction::harmonic());
  out.push_back(MonotoneFunction::bures());
  return out;
}

}  // namespace

TEST_CASE("catalog normalization, symmetry and regularity") {
  const std::vector<double> grid = log_spaced(1e-6, 1e6, 121);
  for (const MonotoneFunction& f : full_catalog()) {
    CAPTURE(f.id());
    CHECK(std::abs(f(1.0) - 1.0) <= 1e-14);
    for (double t : grid) {
      const double ft = f(t);
      CHECK(ft > 0.0);
      CHECK(std::abs(ft - t * f(1.0 / t)) <= 1e-12 * ft);
    }
    CHECK(f.regular() == (f.at_zero() > 0.0));
  }
}

TEST_CASE("eval_f examples") {
  for (double p : wyd_grid()) CHECK(MonotoneFunction::wyd(p)(1.0) == 1.0);

  // lim_{t->0} f_p(t) = p(1-p) for p in (0, 1); mpmath gives f_0.3(1e-25) = 0.2100000066.
  const MonotoneFunction f03 = MonotoneFunction::wyd(0.3);
  CHECK(f03.at_zero() == doctest::Approx(0.21).epsilon(1e-15));
  CHECK(std::abs(f03(1e-25) - 0.210000006640783297) <= 1e-12);

  // f_2(t) = 2t/(t+1); at 3 that is 1.5 (mpmath: f_2(3 +- 1e-6) = 1.5 +- 1.25e-7).
  const MonotoneFunction f2 = MonotoneFunction::wyd(2.0);
  CHECK(std::abs(f2(3.0) - 1.5) <= 1e-14);
  CHECK(std::abs(f2(3.0 + 1e-6) - 1.50000012499996875) <= 1e-14);
  CHECK(std::abs(f2(3.0 - 1e-6) - 1.49999987499996875) <= 1e-14);

  CHECK(std::abs(MonotoneFunction::kubo()(std::exp(1.0)) - 1.71828182845904524) <= 1e-14);

  // Reference values from mpmath at 30 digits.
  struct Ref {
    double p, t, value;
  };
  for (const Ref& r : {Ref{0.3, 0.01, 0.28625982872429378815}, Ref{0.3, 0.5, 0.7273946829952541758},
                       Ref{0.3, 2.0, 1.4547893659905083516}, Ref{0.3, 100.0, 28.625982872429378815},
                       Ref{1.5, 0.01, 0.081756756756756756757}, Ref{1.5, 0.5, 0.7002357756356504595},
                       Ref{1.5, 2.0, 1.400471551271300919}, Ref{-0.5, 100.0, 8.1756756756756756757}}) {
    CAPTURE(r.p);
    CAPTURE(r.t);
    CHECK(std::abs(MonotoneFunction::wyd(r.p)(r.t) - r.value) <= 1e-14 * r.value);
  }

  CHECK_THROWS_AS(f03(0.0), DomainError);
  CHECK_THROWS_AS(f03(-1.0), DomainError);
  CHECK_THROWS_AS(MonotoneFunction::wyd(2.5), UnsupportedParameter);
  CHECK_THROWS_AS(MonotoneFunction::wyd(-1.5), UnsupportedParameter);
  CHECK_THROWS_AS(MonotoneFunction::wyd(0.0), UnsupportedParameter);
  CHECK_THROWS_AS(MonotoneFunction::wyd(1.0), UnsupportedParameter);
}

TEST_CASE("removable singularity at t = 1") {
  for (double p : wyd_grid()) {
    const MonotoneFunction f = MonotoneFunction::wyd(p);
    for (double t : {1.0 - 1e-8, 1.0 + 1e-8, 1.0 - 9e-8, 1.0 + 9e-8, 1.0 - 1.1e-7, 1.0 + 1.1e-7, 1.0 - 1e-4, 1.0 + 1e-4}) {
      CAPTURE(p);
      CAPTURE(t);
      // Series branch below 1e-7, closed form above.
      const double s = t - 1.0;
      CHECK(std::abs(f(t) - 1.0) <= 1e-6 + std::abs(s));
    }
    CHECK(std::abs(f(1.0 + 1e-8) - 1.0) <= 1e-6);
    CHECK(std::abs(f(1.0 - 1e-8) - 1.0) <= 1e-6);
  }
}

TEST_CASE("values near t = 1 match high-precision references") {
  struct Ref {
    double p, t, value;
  };
  const Ref refs[] = {
      {0.3, 0.99989999, 0.99994999434150206481},  {0.3, 0.99990001, 0.99995000434176541789},
      {0.3, 1.00009999, 1.0000499943418312315},   {0.3, 1.00010001, 1.0000500043415679179},
      {0.3, 1.00000001, 1.0000000049999999934},   {1.5, 0.99989999, 0.99994999354130204249},
      {1.5, 0.99990001, 0.99995000354188541957},  {1.5, 1.00009999, 1.0000499935420312092},
      {1.5, 1.00010001, 1.0000500035414479196},   {1.5, 1.00000001, 1.0000000049999999854},
      {-0.7, 0.99989999, 0.99994999317454369918}, {-0.7, 0.99990001, 0.99995000317527375393},
      {-0.7, 1.00009999, 1.0000499931754561992},  {-0.7, 1.00010001, 1.0000500031747262539},
      {-0.7, 1.00000001, 1.0000000049999999818},
  };
  for (const Ref& r : refs) {
    CAPTURE(r.p);
    CAPTURE(r.t);
    CHECK(std::abs(MonotoneFunction::wyd(r.p)(r.t) - r.value) <= 1e-12);
  }
}

TEST_CASE("family limits: Kubo and minimal metric") {
  // The convergence f_p -> f_kubo is O(p log t) relative, so the absolute
  // bound is taken on [0.1, 10] and the relative one on [1e-3, 1e3].
  const std::vector<double> grid = log_spaced(1e-3, 1e3, 61);
  const std::vector<double> inner = log_spaced(0.1, 10.0, 61);
  const MonotoneFunction kubo = MonotoneFunction::kubo();
  for (double p : {0.001, 0.999}) {
    double worst = 0.0;
    for (double t : inner) worst = std::max(worst, std::abs(MonotoneFunction::wyd(p)(t) - kubo(t)));
    CHECK(worst <= 1e-2);
    double worst_rel = 0.0;
    for (double t : grid) worst_rel = std::max(worst_rel, std::abs(MonotoneFunction::wyd(p)(t) / kubo(t) - 1.0));
    CHECK(worst_rel <= 1e-2);
  }
  for (double t : grid) {
    CHECK(std::abs(MonotoneFunction::wyd(2.0)(t) - 2.0 * t / (t + 1.0)) <= 1e-10);
    CHECK(std::abs(MonotoneFunction::wyd(-1.0)(t) - 2.0 * t / (t + 1.0)) <= 1e-10);
    CHECK(std::abs(MonotoneFunction::harmonic()(t) - 2.0 * t / (t + 1.0)) <= 1e-15);
  }
}

TEST_CASE("classify") {
  CHECK(MonotoneFunction::wyd(0.5).regularity() == Regularity::Regular);
  CHECK(MonotoneFunction::wyd(0.5).metric_constant() == 0.25);
  CHECK(MonotoneFunction::wyd(1.5).regularity() == Regularity::NonRegular);
  CHECK(MonotoneFunction::wyd(2.0).regularity() == Regularity::NonRegular);
  // f_p = f_{1-p}: negative p mirrors the non-regular range (1, 2).
  CHECK(MonotoneFunction::wyd(-0.5).regularity() == Regularity::NonRegular);
  CHECK(MonotoneFunction::wyd(-0.5)(1e-12) < 1e-5);
  CHECK(MonotoneFunction::kubo().regularity() == Regularity::NonRegular);
  CHECK(MonotoneFunction::kubo()(1e-300) < 2e-3);
  CHECK(MonotoneFunction::harmonic().regularity() == Regularity::NonRegular);
  CHECK(MonotoneFunction::bures().regularity() == Regularity::Regular);
  CHECK(MonotoneFunction::bures().metric_constant() == 0.5);
  CHECK_THROWS_AS(MonotoneFunction::kubo().metric_constant(), UnsupportedParameter);
}

TEST_CASE("metric ids round-trip through parse") {
  for (const MonotoneFunction& f : full_catalog()) {
    const MonotoneFunction g = MonotoneFunction::parse(f.id());
    CHECK(g.id() == f.id());
    CHECK(g(2.7) == f(2.7));
  }
  CHECK(MonotoneFunction::parse("wyd:0.5").id() == "wyd:0.5");
  CHECK_THROWS_AS(MonotoneFunction::parse("wyd:"), UnsupportedParameter);
  CHECK_THROWS_AS(MonotoneFunction::parse("wyd:abc"), UnsupportedParameter);
  CHECK_THROWS_AS(MonotoneFunction::parse("fisher"), UnsupportedParameter);
  CHECK_THROWS_AS(MonotoneFunction::parse("wyd:3"), UnsupportedParameter);
}

TEST_CASE("c_value") {
  const MetricKernel wyd05(MonotoneFunction::wyd(0.5));
  for (double a : {0.1, 1.0, 7.0}) CHECK(wyd05.c(a, a) == doctest::Approx(1.0 / a).epsilon(1e-15));
  // (x^p - y^p)(x^{1-p} - y^{1-p}) / (p(1-p)(x-y)^2) at p = 1/2, (4, 1).
  CHECK(std::abs(wyd05.c(4.0, 1.0) - 4.0 / 9.0) <= 1e-15);
  const MetricKernel kubo(MonotoneFunction::kubo());
  CHECK(std::abs(kubo.c(2.0, 1.0) - std::log(2.0)) <= 1e-15);

  Rng rng(8);
  for (const MonotoneFunction& f : full_catalog()) {
    const MetricKernel k(f);
    for (int i = 0; i < 50; ++i) {
      const double x = std::exp(rng.uniform(-10.0, 3.0));
      const double y = std::exp(rng.uniform(-10.0, 3.0));
      CHECK(std::abs(k.c(x, y) - k.c(y, x)) <= 1e-12 * k.c(x, y));
    }
  }
  CHECK_THROWS_AS(kubo.c(0.0, 1.0), DomainError);
}

TEST_CASE("c_hat_value") {
  for (const MonotoneFunction& f : full_catalog()) CHECK(MetricKernel(f).c_hat(0.5, 0.5) == 0.0);

  const MetricKernel wyd05(MonotoneFunction::wyd(0.5));
  CHECK(std::abs(wyd05.c_hat(0.36, 0.0) - 1.44) <= 1e-15);
  CHECK(std::abs(wyd05.c_hat(0.0, 0.36) - 1.44) <= 1e-15);
  CHECK(wyd05.c_hat(0.0, 0.0) == 0.0);
  // Tiny negative eigenvalues from rounding are clamped.
  CHECK(std::abs(wyd05.c_hat(0.36, -1e-12) - 1.44) <= 1e-15);
  CHECK_THROWS_AS(wyd05.c_hat(0.36, -1e-3), DomainError);

  const MetricKernel kubo(MonotoneFunction::kubo());
  CHECK(std::abs(kubo.c_hat(2.0, 1.0) - std::log(2.0)) <= 1e-15);
  CHECK_THROWS_AS(kubo.c_hat(0.5, 0.0), SingularMetricError);
  CHECK_THROWS_AS(kubo.c_hat(0.5, 1e-13), SingularMetricError);
  CHECK_NOTHROW(kubo.c_hat(0.5, 1e-11));

  // The boundary rule is the limit of the interior formula.
  const MetricKernel bures(MonotoneFunction::bures());
  CHECK(std::abs(bures.c_hat(0.4, 1e-9) - bures.c_hat(0.4, 0.0)) <= 1e-8);

  Rng rng(9);
  for (const MonotoneFunction& f : full_catalog()) {
    const MetricKernel k(f);
    for (int i = 0; i < 200; ++i) {
      const double x = rng.uniform(1e-6, 1.0);
      const double y = rng.uniform(1e-6, 1.0);
      CHECK(k.c_hat(x, y) >= 0.0);
      // Direct (x - y)^2 c(x, y) as an independent route.
      const double direct = (x - y) * (x - y) * k.c(x, y);
      CHECK(std::abs(k.c_hat(x, y) - direct) <= 1e-12 * (direct + 1e-300) + 1e-300);
    }
  }
}

TEST_CASE("h_value") {
  const MetricKernel wyd2(MonotoneFunction::wyd(2.0));
  CHECK(wyd2.h(1.0) == 0.0);
  // h(t) = (t-1)^2 (t+1) / (2t) for the minimal metric.
  CHECK(std::abs(wyd2.h(3.0) - 16.0 / 6.0) <= 1e-14);
  CHECK_THROWS_AS(wyd2.h(0.0), DomainError);

  // c-hat(x, y) = y h(x / y).
  for (const MonotoneFunction& f : full_catalog()) {
    const MetricKernel k(f);
    for (double t : log_spaced(1e-3, 1e3, 25)) CHECK(std::abs(k.h(t) - k.c_hat(t, 1.0)) <= 1e-12 * (1.0 + k.h(t)));
  }
}

TEST_CASE("scalar joint convexity of c-hat") {
  Rng rng(10);
  for (const MonotoneFunction& f : full_catalog()) {
    const MetricKernel k(f);
    double worst = 1.0;
    for (int i = 0; i < 500; ++i) {
      const double x1 = rng.uniform(1e-3, 1.0), y1 = rng.uniform(1e-3, 1.0);
      const double x2 = rng.uniform(1e-3, 1.0), y2 = rng.uniform(1e-3, 1.0);
      const double lambda = rng.uniform(0.0, 1.0);
      const double chord = lambda * k.c_hat(x1, y1) + (1.0 - lambda) * k.c_hat(x2, y2);
      worst = std::min(worst, chord - k.c_hat(lambda * x1 + (1 - lambda) * x2, lambda * y1 + (1 - lambda) * y2));
    }
    CAPTURE(f.id());
    CHECK(worst >= -1e-10);
  }
}

TEST_CASE("extended precision evaluation agrees with double") {
  for (const MonotoneFunction& f : full_catalog()) {
    for (double t : {1e-3, 0.2, 0.9999, 1.0, 1.00002, 1.5, 40.0, 1e3}) {
      CAPTURE(f.id());
      CAPTURE(t);
      const double ext = static_cast<double>(f.extended(t));
      CHECK(std::abs(ext - f(t)) <= 1e-13 * f(t));
    }
  }
  CHECK_THROWS_AS(MonotoneFunction::kubo().extended(-1.0L), DomainError);
}
