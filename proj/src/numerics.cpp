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

#include "gidl/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <unsupported/Eigen/FFT>

namespace gidl {

namespace {

Eigen::FFT<double>& thread_fft() {
  thread_local Eigen::FFT<double> engine;
  return engine;
}

void require_finite(const Mat& x, const char* what) {
  if (!x.allFinite()) throw DimensionError(std::string(what) + ": non-finite entries");
}

}  // namespace

double hermitian_defect(const CMat& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  if (m.size() == 0) return 0.0;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return (m - m.adjoint()).cwiseAbs().maxCoeff() / scale;
}

HermitianMatrix::HermitianMatrix(const CMat& m) {
  if (m.rows() != m.cols()) throw DimensionError("HermitianMatrix: matrix is not square");
  m_ = 0.5 * (m + m.adjoint());
}

HermitianMatrix HermitianMatrix::checked(const CMat& m, double tol) {
  if (m.rows() != m.cols()) throw DimensionError("HermitianMatrix: matrix is not square");
  if (hermitian_defect(m) > tol) throw PreconditionError("HermitianMatrix: input is not Hermitian");
  return HermitianMatrix(m);
}

FourierBasis::FourierBasis(Index d_half) : d_half_(d_half) {
  if (d_half < 0) throw DimensionError("FourierBasis: negative half-length");
}

FourierBasis FourierBasis::for_length(Index length) {
  if (length < 1 || length % 2 == 0) {
    throw DimensionError("FourierBasis: signal length must be odd, got " + std::to_string(length));
  }
  return FourierBasis((length - 1) / 2);
}

cplx FourierBasis::omega() const {
  return std::polar(1.0, 2.0 * std::numbers::pi / static_cast<double>(length()));
}

CMat FourierBasis::matrix() const {
  const Index m = length();
  CMat f(m, m);
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  for (Index row = 0; row < m; ++row) {
    const Index k = row - d_half_;
    for (Index n = 0; n < m; ++n) {
      // reduce k*n mod m before taking the angle to keep the phase exact
      const Index kn = ((k * n) % m + m) % m;
      f(row, n) = std::polar(scale, 2.0 * std::numbers::pi * static_cast<double>(kn) / static_cast<double>(m));
    }
  }
  return f;
}

CVec fft(const CVec& x) {
  // kissfft crashes on single-point transforms, which are the identity anyway
  if (x.size() <= 1) return x;
  CVec out(x.size());
  thread_fft().fwd(out.data(), x.data(), x.size());
  return out;
}

CVec fft(const Vec& x) { return fft(CVec(x.cast<cplx>())); }

CVec ifft(const CVec& X) {
  if (X.size() <= 1) return X;
  CVec out(X.size());
  thread_fft().inv(out.data(), X.data(), X.size());
  return out;
}

Vec ifft_real(const CVec& X) { return ifft(X).real(); }

CVec dft_forward(const Vec& x, const FourierBasis& basis) {
  const Index m = basis.length();
  if (x.size() % 2 == 0) throw DimensionError("dft_forward: even-length input");
  if (x.size() != m) throw DimensionError("dft_forward: length does not match the basis");
  const CVec X = fft(x);
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  CVec f(m);
  const Index d = basis.d_half();
  for (Index k = -d; k <= d; ++k) f(k + d) = X(((-k) % m + m) % m) * scale;
  return f;
}

bool is_conjugate_symmetric(const CVec& f, double tol) {
  const Index m = f.size();
  if (m % 2 == 0) return false;
  const Index d = (m - 1) / 2;
  for (Index k = 0; k <= d; ++k) {
    if (std::abs(f(d + k) - std::conj(f(d - k))) > tol) return false;
  }
  return true;
}

Vec dft_inverse(const CVec& f, const FourierBasis& basis, double tol) {
  const Index m = basis.length();
  if (f.size() != m) throw DimensionError("dft_inverse: length does not match the basis");
  if (!is_conjugate_symmetric(f, tol)) {
    throw PreconditionError("dft_inverse: input is not conjugate-symmetric");
  }
  const Index d = basis.d_half();
  CVec g(m);
  for (Index k = -d; k <= d; ++k) g((k % m + m) % m) = f(k + d);
  const CVec x = fft(g) / std::sqrt(static_cast<double>(m));
  return x.real();
}

Vec circular_convolve(const Vec& a, const Vec& x) {
  if (a.size() != x.size()) throw DimensionError("circular_convolve: length mismatch");
  if (a.size() == 0) return Vec();
  const CVec A = fft(a);
  const CVec X = fft(x);
  return ifft_real(A.cwiseProduct(X));
}

Vec circular_convolve_direct(const Vec& a, const Vec& x) {
  if (a.size() != x.size()) throw DimensionError("circular_convolve: length mismatch");
  const Index d = a.size();
  Vec out = Vec::Zero(d);
  for (Index i = 0; i < d; ++i) {
    for (Index k = 0; k < d; ++k) out(i) += a(k) * x(((i - k) % d + d) % d);
  }
  return out;
}

Vec circular_correlate(const Vec& a, const Vec& r) {
  if (a.size() != r.size()) throw DimensionError("circular_correlate: length mismatch");
  if (a.size() == 0) return Vec();
  const CVec A = fft(a);
  const CVec R = fft(r);
  return ifft_real(A.conjugate().cwiseProduct(R));
}

HermitianEigen hermitian_eig(const HermitianMatrix& x) {
  const CMat& m = x.matrix();
  if (!m.allFinite()) throw DimensionError("hermitian_eig: non-finite entries");
  Eigen::SelfAdjointEigenSolver<CMat> solver(m);
  if (solver.info() != Eigen::Success) throw NumericalError("hermitian_eig: no convergence");
  const Index n = m.rows();
  HermitianEigen out{Vec(n), CMat(n, n)};
  // Eigen returns ascending order
  for (Index i = 0; i < n; ++i) {
    out.values(i) = solver.eigenvalues()(n - 1 - i);
    out.vectors.col(i) = solver.eigenvectors().col(n - 1 - i);
  }
  return out;
}

SvdResult svd(const Mat& x) {
  require_finite(x, "svd");
  Eigen::JacobiSVD<Mat> solver(x, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return {solver.matrixU(), solver.singularValues(), solver.matrixV()};
}

}  // namespace gidl
