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

#include "qig/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qig/errors.hpp"

namespace qig {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream msg;
    msg << what << ": shape mismatch " << a.rows() << "x" << a.cols() << " vs " << b.rows()
        << "x" << b.cols();
    throw ValidationError(msg.str());
  }
}

void require_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    std::ostringstream msg;
    msg << what << ": dimension mismatch " << a << " vs " << b;
    throw ValidationError(msg.str());
  }
}

ComplexMatrix symmetrized(const ComplexMatrix& m) {
  const std::size_t n = m.rows();
  ComplexMatrix out(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    out(r, r) = m(r, r).real();
    for (std::size_t c = r + 1; c < n; ++c) {
      const cplx v = 0.5 * (m(r, c) + std::conj(m(c, r)));
      out(r, c) = v;
      out(c, r) = std::conj(v);
    }
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// ComplexMatrix

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    throw ValidationError("ComplexMatrix: entries length does not match rows*cols");
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

cplx ComplexMatrix::trace() const {
  cplx t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const cplx& v : data_) s += std::norm(v);
  return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const cplx& v : data_) m = std::max(m, std::abs(v));
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  require_same_shape(*this, o, "operator+");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  require_same_shape(*this, o, "operator-");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (cplx& v : data_) v *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw ValidationError("matrix product: inner dimensions differ");
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx v = a(r, k);
      if (v == cplx{}) continue;
      for (std::size_t c = 0; c < b.cols(); ++c) out(r, c) += v * b(k, c);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// HermitianMatrix

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m) {
  if (!m.is_square() || m.rows() == 0) {
    throw ValidationError("HermitianMatrix: matrix must be square and non-empty");
  }
  const std::size_t n = m.rows();
  double asym = 0.0;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = r; c < n; ++c) asym = std::max(asym, std::abs(m(r, c) - std::conj(m(c, r))));
  if (!(asym <= 1e-12 * (1.0 + m.max_abs()))) {
    std::ostringstream msg;
    msg << "HermitianMatrix: asymmetry " << asym << " exceeds tolerance";
    throw ValidationError(msg.str());
  }
  m_ = symmetrized(m);
}

HermitianMatrix make_hermitian_unchecked(ComplexMatrix m) {
  if (!m.is_square() || m.rows() == 0) {
    throw ValidationError("HermitianMatrix: matrix must be square and non-empty");
  }
  return HermitianMatrix(symmetrized(m), HermitianMatrix::Trusted{});
}

HermitianMatrix HermitianMatrix::zeros(std::size_t n) {
  return make_hermitian_unchecked(ComplexMatrix(n, n));
}

HermitianMatrix HermitianMatrix::identity(std::size_t n) {
  return make_hermitian_unchecked(ComplexMatrix::identity(n));
}

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> values) {
  return make_hermitian_unchecked(ComplexMatrix::diagonal(values));
}

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
  return make_hermitian_unchecked(a.m_ + b.m_);
}

HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
  return make_hermitian_unchecked(a.m_ - b.m_);
}

HermitianMatrix operator*(double s, const HermitianMatrix& a) {
  return make_hermitian_unchecked(a.m_ * cplx(s));
}

// ---------------------------------------------------------------------------
// Eigensolver

Spectrum hermitian_eigen(const HermitianMatrix& h) {
  const std::size_t n = h.dim();
  ComplexMatrix a = h.matrix();
  ComplexMatrix v = ComplexMatrix::identity(n);

  double scale = 0.0;
  for (const cplx& x : a.entries()) scale += std::norm(x);
  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (off <= 1e-32 * scale || off == 0.0) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double mag = std::abs(a(p, q));
        if (mag == 0.0) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        // Rotation is negligible once the off-diagonal entry is below the
        // rounding level of both diagonal entries.
        if (sweep > 3 && mag < 1e-18 * (std::abs(app) + std::abs(aqq))) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        const cplx phase = a(p, q) / mag;
        const double tau = (aqq - app) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // J has J_pp = J_qq = c, J_pq = s * phase, J_qp = -s * conj(phase); A <- J^dagger A J.
        const cplx jpq = s * phase;
        const cplx jqp = -s * std::conj(phase);
        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = a(k, p);
          const cplx akq = a(k, q);
          a(k, p) = c * akp + jqp * akq;
          a(k, q) = jpq * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = a(p, k);
          const cplx aqk = a(q, k);
          a(p, k) = c * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const cplx vkp = v(k, p);
          const cplx vkq = v(k, q);
          v(k, p) = c * vkp + jqp * vkq;
          v(k, q) = jpq * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });
  Spectrum out;
  out.eigenvalues.resize(n);
  out.vectors = ComplexMatrix(n, n);
  for (std::size_t col = 0; col < n; ++col) {
    out.eigenvalues[col] = a(order[col], order[col]).real();
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, col) = v(r, order[col]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(HermitianMatrix h) : h_(std::move(h)) {
  const double tr = h_.trace();
  if (!(std::abs(tr - 1.0) <= kTraceTolerance)) {
    std::ostringstream msg;
    msg << "DensityMatrix: trace " << tr << " differs from 1";
    throw ValidationError(msg.str());
  }
  spectrum_ = hermitian_eigen(h_);
  if (!(spectrum_.min() >= -kEigenvalueTolerance)) {
    std::ostringstream msg;
    msg << "DensityMatrix: negative eigenvalue " << spectrum_.min();
    throw ValidationError(msg.str());
  }
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t n) {
  return DensityMatrix((1.0 / static_cast<double>(n)) * HermitianMatrix::identity(n));
}

DensityMatrix DensityMatrix::pure(std::span<const cplx> psi) {
  double norm2 = 0.0;
  for (const cplx& x : psi) norm2 += std::norm(x);
  if (!(norm2 > 0.0)) throw ValidationError("DensityMatrix::pure: zero vector");
  const std::size_t n = psi.size();
  ComplexMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = psi[r] * std::conj(psi[c]) / norm2;
  return DensityMatrix(make_hermitian_unchecked(std::move(m)));
}

DensityMatrix DensityMatrix::mix(double lambda, const DensityMatrix& a, const DensityMatrix& b) {
  require_dim(a.dim(), b.dim(), "DensityMatrix::mix");
  return DensityMatrix(lambda * a.h_ + (1.0 - lambda) * b.h_);
}

// ---------------------------------------------------------------------------
// Tensor operations

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ar = 0; ar < a.rows(); ++ar)
    for (std::size_t ac = 0; ac < a.cols(); ++ac) {
      const cplx v = a(ar, ac);
      for (std::size_t br = 0; br < b.rows(); ++br)
        for (std::size_t bc = 0; bc < b.cols(); ++bc)
          out(ar * b.rows() + br, ac * b.cols() + bc) = v * b(br, bc);
    }
  return out;
}

HermitianMatrix kron(const HermitianMatrix& a, const HermitianMatrix& b) {
  return make_hermitian_unchecked(kron(a.matrix(), b.matrix()));
}

ComplexMatrix partial_trace(const ComplexMatrix& m, BipartiteDims dims, Party keep) {
  if (!m.is_square() || m.rows() != dims.total()) {
    std::ostringstream msg;
    msg << "partial_trace: matrix of size " << m.rows() << "x" << m.cols()
        << " does not match dims " << dims.n1 << "x" << dims.n2;
    throw ValidationError(msg.str());
  }
  const std::size_t n1 = dims.n1;
  const std::size_t n2 = dims.n2;
  if (keep == Party::First) {
    ComplexMatrix out(n1, n1);
    for (std::size_t i = 0; i < n1; ++i)
      for (std::size_t j = 0; j < n1; ++j)
        for (std::size_t k = 0; k < n2; ++k) out(i, j) += m(i * n2 + k, j * n2 + k);
    return out;
  }
  ComplexMatrix out(n2, n2);
  for (std::size_t i = 0; i < n2; ++i)
    for (std::size_t j = 0; j < n2; ++j)
      for (std::size_t k = 0; k < n1; ++k) out(i, j) += m(k * n2 + i, k * n2 + j);
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, BipartiteDims dims, Party keep) {
  return DensityMatrix(make_hermitian_unchecked(partial_trace(rho.matrix(), dims, keep)));
}

HermitianMatrix commutator_i(const HermitianMatrix& rho, const HermitianMatrix& a) {
  require_dim(rho.dim(), a.dim(), "commutator_i");
  const ComplexMatrix ra = rho.matrix() * a.matrix();
  // i(rho A - A rho) = i(rho A - (rho A)^dagger)
  ComplexMatrix out = (ra - ra.adjoint()) * cplx(0.0, 1.0);
  return make_hermitian_unchecked(std::move(out));
}

HermitianMatrix commutator_i(const DensityMatrix& rho, const HermitianMatrix& a) {
  return commutator_i(rho.hermitian(), a);
}

// ---------------------------------------------------------------------------
// Spectral functions

HermitianMatrix matrix_function(const Spectrum& s, const ScalarFunction& phi) {
  const std::size_t n = s.eigenvalues.size();
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) {
    values[i] = phi(s.eigenvalues[i]);
    if (!std::isfinite(values[i])) {
      std::ostringstream msg;
      msg << "matrix_function: function undefined at eigenvalue " << s.eigenvalues[i];
      throw DomainError(msg.str());
    }
  }
  ComplexMatrix out(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = r; c < n; ++c) {
      cplx acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += s.vectors(r, k) * values[k] * std::conj(s.vectors(c, k));
      out(r, c) = acc;
      out(c, r) = std::conj(acc);
    }
  return make_hermitian_unchecked(std::move(out));
}

HermitianMatrix matrix_function(const HermitianMatrix& m, const ScalarFunction& phi) {
  return matrix_function(hermitian_eigen(m), phi);
}

DensityMatrix time_evolve(const DensityMatrix& rho, const HermitianMatrix& h, double t) {
  require_dim(rho.dim(), h.dim(), "time_evolve");
  if (t == 0.0) return rho;
  const Spectrum s = hermitian_eigen(h);
  const std::size_t n = h.dim();
  ComplexMatrix u(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      cplx acc = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        acc += s.vectors(r, k) * std::polar(1.0, t * s.eigenvalues[k]) * std::conj(s.vectors(c, k));
      u(r, c) = acc;
    }
  return DensityMatrix(make_hermitian_unchecked(u * rho.matrix() * u.adjoint()));
}

double expectation(const DensityMatrix& rho, const HermitianMatrix& a) {
  require_dim(rho.dim(), a.dim(), "expectation");
  const std::size_t n = a.dim();
  double acc = 0.0;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) acc += (rho.matrix()(r, c) * a(c, r)).real();
  return acc;
}

double variance(const DensityMatrix& rho, const HermitianMatrix& a) {
  require_dim(rho.dim(), a.dim(), "variance");
  const HermitianMatrix a2 = make_hermitian_unchecked(a.matrix() * a.matrix());
  const double mean = expectation(rho, a);
  return expectation(rho, a2) - mean * mean;
}

void CompensatedSum::add(double v) {
  const double t = sum_ + v;
  if (std::abs(sum_) >= std::abs(v)) {
    comp_ += (sum_ - t) + v;
  } else {
    comp_ += (v - t) + sum_;
  }
  sum_ = t;
}

}  // namespace qig
