// Copyright 2026 The gidl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GIDL_NUMERICS_HPP
#define GIDL_NUMERICS_HPP

#include <complex>

#include <Eigen/Dense>

#include "gidl/errors.hpp"

namespace gidl {

using Index = Eigen::Index;
using cplx = std::complex<double>;
using Vec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;

/// Square complex matrix equal to its conjugate transpose.
///
/// Construction symmetrizes, so the stored matrix is Hermitian to rounding.
/// Use `checked` when the input comes from outside and a grossly
/// non-Hermitian matrix should be rejected instead of silently averaged.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(const CMat& m);

  static HermitianMatrix checked(const CMat& m, double tol = tol::kFactorization);
  static HermitianMatrix zero(Index n) { return HermitianMatrix(CMat::Zero(n, n)); }

  const CMat& matrix() const { return m_; }
  Index size() const { return m_.rows(); }
  cplx operator()(Index i, Index j) const { return m_(i, j); }

 private:
  CMat m_;
};

/// Largest |X - X^H| entry relative to max(1, max |X|).
double hermitian_defect(const CMat& m);

/// Normalized DFT on R^{2d+1} with rows indexed by frequency -d..d.
///
/// F(k, n) = exp(2 pi i k n / (2d+1)) / sqrt(2d+1). Vectors in the frequency
/// domain are stored with frequency k at position k + d.
class FourierBasis {
 public:
  explicit FourierBasis(Index d_half);
  /// Basis for signals of the given odd length; even lengths are rejected.
  static FourierBasis for_length(Index length);

  Index d_half() const { return d_half_; }
  Index length() const { return 2 * d_half_ + 1; }
  cplx omega() const;
  /// Dense F, mostly for tests.
  CMat matrix() const;

 private:
  Index d_half_;
};

CVec dft_forward(const Vec& x, const FourierBasis& basis);
/// F^H f for f in the conjugate-symmetric space; throws PreconditionError when
/// f_k and conj(f_{-k}) differ by more than `tol`.
Vec dft_inverse(const CVec& f, const FourierBasis& basis,
                double tol = tol::kConjugateSymmetry);
bool is_conjugate_symmetric(const CVec& f, double tol = tol::kConjugateSymmetry);

// Unnormalized FFT helpers, X_k = sum_n x_n exp(-2 pi i k n / N). Each thread
// keeps its own plan cache.
CVec fft(const CVec& x);
CVec fft(const Vec& x);
/// Inverse including the 1/N factor.
CVec ifft(const CVec& X);
/// Real part of the inverse transform.
Vec ifft_real(const CVec& X);

/// (a * x)_i = sum_k a_k x_{(i-k) mod d}, through the FFT.
Vec circular_convolve(const Vec& a, const Vec& x);
/// Same quantity by the definitional double sum. O(d^2); kept for tests and
/// benchmarks.
Vec circular_convolve_direct(const Vec& a, const Vec& x);
/// (a (x) r)_k = sum_n a_n r_{(n+k) mod d}, the adjoint of x -> a * x.
Vec circular_correlate(const Vec& a, const Vec& r);

struct HermitianEigen {
  Vec values;    // descending
  CMat vectors;  // columns match `values`
};
HermitianEigen hermitian_eig(const HermitianMatrix& x);

struct SvdResult {
  Mat U;
  Vec singular_values;  // descending, >= 0
  Mat V;
};
/// Full SVD, X = U diag(s) V^T with square U and V.
SvdResult svd(const Mat& x);

}  // namespace gidl

#endif  // GIDL_NUMERICS_HPP
