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

#include "qig/metric.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "qig/errors.hpp"

namespace qig {

namespace {

// Below this distance from t = 1 the wyd quotient is evaluated from the
// second-order expansion of t^q - 1 = q s (1 + (q-1)s/2 + (q-1)(q-2)s^2/6).
// Above it log1p and expm1 keep the closed form accurate.
constexpr double kSeriesRadius = 1e-7;

template <typename T>
T power_series_factor(T q, T s) {
  return 1 + (q - 1) * s / 2 + (q - 1) * (q - 2) * s * s / 6;
}

template <typename T>
void require_positive(T t, const char* what) {
  if (!(t > 0) || !std::isfinite(t)) {
    std::ostringstream msg;
    msg << what << ": argument " << t << " must be positive";
    throw DomainError(msg.str());
  }
}

template <typename T>
T log_of(T t) {
  return std::abs(t - 1) < T(0.5) ? std::log1p(t - 1) : std::log(t);
}

template <typename T>
T wyd_value(T p, T t) {
  const T s = t - 1;
  if (std::abs(s) < T(kSeriesRadius)) {
    return 1 / (power_series_factor(p, s) * power_series_factor(1 - p, s));
  }
  const T l = log_of(t);
  return p * (1 - p) * s * s / (std::expm1(p * l) * std::expm1((1 - p) * l));
}

template <typename T>
T kubo_value(T t) {
  const T s = t - 1;
  if (s == 0) return 1;
  return s / log_of(t);
}

template <typename T>
T evaluate(MonotoneFunction::Family family, double p, T t) {
  require_positive(t, "f");
  switch (family) {
    case MonotoneFunction::Family::Wyd:
      return wyd_value(static_cast<T>(p), t);
    case MonotoneFunction::Family::Kubo:
      return kubo_value(t);
    case MonotoneFunction::Family::Harmonic:
      return 2 * t / (t + 1);
    case MonotoneFunction::Family::Bures:
      return (1 + t) / 2;
  }
  return 0;
}

}  // namespace

MonotoneFunction MonotoneFunction::wyd(double p) {
  if (!(p >= -1.0 && p <= 2.0) || p == 0.0 || p == 1.0) {
    std::ostringstream msg;
    msg << "wyd: parameter p=" << p << " outside [-1, 2] \\ {0, 1}";
    throw UnsupportedParameter(msg.str());
  }
  return MonotoneFunction(Family::Wyd, p);
}

MonotoneFunction MonotoneFunction::kubo() { return MonotoneFunction(Family::Kubo, 0.0); }
MonotoneFunction MonotoneFunction::harmonic() { return MonotoneFunction(Family::Harmonic, 0.0); }
MonotoneFunction MonotoneFunction::bures() { return MonotoneFunction(Family::Bures, 0.0); }

MonotoneFunction MonotoneFunction::parse(std::string_view id) {
  if (id == "kubo") return kubo();
  if (id == "harmonic") return harmonic();
  if (id == "bures") return bures();
  constexpr std::string_view prefix = "wyd:";
  if (id.substr(0, prefix.size()) == prefix) {
    const std::string text(id.substr(prefix.size()));
    char* end = nullptr;
    errno = 0;
    const double p = std::strtod(text.c_str(), &end);
    if (!text.empty() && end == text.c_str() + text.size() && errno == 0) return wyd(p);
  }
  throw UnsupportedParameter("unknown metric id '" + std::string(id) +
                             "' (expected wyd:<p>, kubo, harmonic or bures)");
}

std::string MonotoneFunction::id() const {
  switch (family_) {
    case Family::Kubo:
      return "kubo";
    case Family::Harmonic:
      return "harmonic";
    case Family::Bures:
      return "bures";
    case Family::Wyd:
      break;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "wyd:%.15g", p_);
  if (std::strtod(buf + 4, nullptr) != p_) std::snprintf(buf, sizeof buf, "wyd:%.17g", p_);
  return buf;
}

double MonotoneFunction::operator()(double t) const { return evaluate(family_, p_, t); }

long double MonotoneFunction::extended(long double t) const { return evaluate(family_, p_, t); }

double MonotoneFunction::at_zero() const {
  switch (family_) {
    case Family::Wyd:
      // f_p = f_{1-p}; for p outside (0, 1) one factor of the denominator
      // diverges as t -> 0 and the limit is 0.
      return (p_ > 0.0 && p_ < 1.0) ? p_ * (1.0 - p_) : 0.0;
    case Family::Bures:
      return 0.5;
    case Family::Kubo:
    case Family::Harmonic:
      return 0.0;
  }
  return 0.0;
}

Regularity MonotoneFunction::regularity() const {
  return at_zero() > 0.0 ? Regularity::Regular : Regularity::NonRegular;
}

double MonotoneFunction::metric_constant() const {
  if (!regular()) throw UnsupportedParameter("metric constant undefined for non-regular " + id());
  return at_zero();
}

std::vector<MonotoneFunction> default_catalog() {
  std::vector<MonotoneFunction> out;
  for (double p : {0.1, 0.3, 0.5, 0.7, 0.9, 1.5, 2.0, -0.5}) out.push_back(MonotoneFunction::wyd(p));
  out.push_back(MonotoneFunction::kubo());
  out.push_back(MonotoneFunction::harmonic());
  out.push_back(MonotoneFunction::bures());
  return out;
}

// ---------------------------------------------------------------------------

MetricKernel::MetricKernel(MonotoneFunction f, double eigenvalue_floor)
    : f_(f), floor_(eigenvalue_floor) {
  if (!(floor_ > 0.0)) throw ValidationError("MetricKernel: eigenvalue floor must be positive");
}

double MetricKernel::c(double x, double y) const {
  require_positive(x, "c");
  require_positive(y, "c");
  return 1.0 / (y * f_(x / y));
}

double MetricKernel::h(double t) const {
  require_positive(t, "h");
  const double s = t - 1.0;
  return s * s / f_(t);
}

double MetricKernel::c_hat(double x, double y) const {
  for (double* v : {&x, &y}) {
    if (*v < 0.0) {
      if (*v < -1e-10 || !std::isfinite(*v)) {
        std::ostringstream msg;
        msg << "c_hat: negative argument " << *v;
        throw DomainError(msg.str());
      }
      *v = 0.0;
    }
  }
  if (std::abs(x - y) < kDegenerateGap) return 0.0;
  const double lo = std::min(x, y);
  const double hi = std::max(x, y);
  if (!f_.regular()) {
    if (lo < floor_) {
      std::ostringstream msg;
      msg << "c_hat: argument " << lo << " below eigenvalue floor " << floor_ << " for non-regular "
          << f_.id();
      throw SingularMetricError(msg.str());
    }
  } else if (lo == 0.0) {
    return hi / f_.at_zero();
  }
  return hi * h(lo / hi);
}

}  // namespace qig
