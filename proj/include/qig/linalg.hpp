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

#ifndef QIG_LINALG_HPP
#define QIG_LINALG_HPP

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace qig {

using cplx = std::complex<double>;

/// Dense row-major complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const cplx> entries() const { return data_; }

  ComplexMatrix adjoint() const;
  cplx trace() const;
  double frobenius_norm() const;
  double max_abs() const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cplx s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

  bool operator==(const ComplexMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

/// Square matrix equal to its adjoint up to 1e-12 (1 + max |entry|).
/// Construction validates and then symmetrizes M <- (M + M^dagger) / 2.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(const ComplexMatrix& m);

  static HermitianMatrix zeros(std::size_t n);
  static HermitianMatrix identity(std::size_t n);
  static HermitianMatrix diagonal(std::span<const double> values);

  std::size_t dim() const { return m_.rows(); }
  const ComplexMatrix& matrix() const { return m_; }
  cplx operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

  double trace() const { return m_.trace().real(); }

  friend HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b);
  friend HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b);
  friend HermitianMatrix operator*(double s, const HermitianMatrix& a);

 private:
  struct Trusted {};
  HermitianMatrix(ComplexMatrix m, Trusted) : m_(std::move(m)) {}
  friend HermitianMatrix make_hermitian_unchecked(ComplexMatrix m);

  ComplexMatrix m_;
};

/// Symmetrizes without the tolerance check. For results that are Hermitian
/// in exact arithmetic (products like U D U^dagger, sums of Hermitians).
HermitianMatrix make_hermitian_unchecked(ComplexMatrix m);

/// Eigen-decomposition M = U diag(eigenvalues) U^dagger, eigenvalues ascending,
/// eigenvectors stored as the columns of `vectors`.
struct Spectrum {
  std::vector<double> eigenvalues;
  ComplexMatrix vectors;

  double min() const { return eigenvalues.front(); }
  double max() const { return eigenvalues.back(); }
};

/// Cyclic complex Jacobi rotations.
Spectrum hermitian_eigen(const HermitianMatrix& m);

/// Positive semidefinite Hermitian matrix with unit trace. Keeps the spectrum
/// it was validated with, so downstream spectral formulas reuse it.
class DensityMatrix {
 public:
  static constexpr double kTraceTolerance = 1e-10;
  static constexpr double kEigenvalueTolerance = 1e-10;

  DensityMatrix() = default;
  explicit DensityMatrix(HermitianMatrix h);

  static DensityMatrix maximally_mixed(std::size_t n);
  /// |psi><psi| for a (not necessarily normalized) nonzero vector.
  static DensityMatrix pure(std::span<const cplx> psi);

  std::size_t dim() const { return h_.dim(); }
  const HermitianMatrix& hermitian() const { return h_; }
  const ComplexMatrix& matrix() const { return h_.matrix(); }
  const Spectrum& spectrum() const { return spectrum_; }

  /// lambda * a + (1 - lambda) * b.
  static DensityMatrix mix(double lambda, const DensityMatrix& a, const DensityMatrix& b);

 private:
  HermitianMatrix h_;
  Spectrum spectrum_;
};

enum class Party { First, Second };

/// Dimensions of a two-party tensor product H1 (x) H2.
struct BipartiteDims {
  std::size_t n1 = 1;
  std::size_t n2 = 1;
  std::size_t total() const { return n1 * n2; }
  bool operator==(const BipartiteDims&) const = default;
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
HermitianMatrix kron(const HermitianMatrix& a, const HermitianMatrix& b);

/// Reduced matrix of the `keep` party, tracing out the other one.
ComplexMatrix partial_trace(const ComplexMatrix& m, BipartiteDims dims, Party keep);
DensityMatrix partial_trace(const DensityMatrix& rho, BipartiteDims dims, Party keep);

/// i (rho A - A rho).
HermitianMatrix commutator_i(const HermitianMatrix& rho, const HermitianMatrix& a);
HermitianMatrix commutator_i(const DensityMatrix& rho, const HermitianMatrix& a);

using ScalarFunction = std::function<double(double)>;

/// U phi(Lambda) U^dagger. Throws DomainError if phi is not finite on the spectrum.
HermitianMatrix matrix_function(const Spectrum& s, const ScalarFunction& phi);
HermitianMatrix matrix_function(const HermitianMatrix& m, const ScalarFunction& phi);

/// exp(i t H) rho exp(-i t H).
DensityMatrix time_evolve(const DensityMatrix& rho, const HermitianMatrix& h, double t);

/// Tr rho A^2 - (Tr rho A)^2.
double variance(const DensityMatrix& rho, const HermitianMatrix& a);

/// Re Tr(rho A).
double expectation(const DensityMatrix& rho, const HermitianMatrix& a);

/// Adds v to a running sum with Neumaier compensation.
class CompensatedSum {
 public:
  void add(double v);
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace qig

#endif  // QIG_LINALG_HPP
