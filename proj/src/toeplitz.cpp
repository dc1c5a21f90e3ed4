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


#include "gidl/toeplitz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace gidl {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;
  return t;
}

CMat vandermonde(Index n, const std::vector<double>& thetas) {
  CMat v(n, static_cast<Index>(thetas.size()));
  for (Index l = 0; l < v.cols(); ++l) {
    for (Index k = 0; k < n; ++k) v(k, l) = std::polar(1.0, static_cast<double>(k) * thetas[l]);
  }
  return v;
}

// Least-squares weights on the first column; nonpositive weights are dropped.
VandermondeFactors fit_weights(const CVec& first_column, std::vector<double> thetas) {
  VandermondeFactors out;
  if (thetas.empty()) return out;
  const CMat v = vandermonde(first_column.size(), thetas);
  const CVec w = v.completeOrthogonalDecomposition().solve(first_column);
  for (std::size_t l = 0; l < thetas.size(); ++l) {
    if (w(static_cast<Index>(l)).real() > 0.0) {
      out.thetas.push_back(thetas[l]);
      out.weights.push_back(w(static_cast<Index>(l)).real());
    }
  }
  return out;
}

// Roots of the annihilating polynomial from the null vector of the leading
// (r+1) x (r+1) block.
std::vector<double> prony_angles(const CMat& x, Index r) {
  const CMat block = x.topLeftCorner(r + 1, r + 1);
  const HermitianEigen e = hermitian_eig(HermitianMatrix(block));
  const CVec h = e.vectors.col(r);
  if (std::abs(h(r)) < 1e-12) return {};
  CMat companion = CMat::Zero(r, r);
  for (Index j = 0; j < r; ++j) companion(0, j) = -h(r - 1 - j) / h(r);
  for (Index j = 1; j < r; ++j) companion(j, j - 1) = 1.0;
  Eigen::ComplexEigenSolver<CMat> solver(companion, false);
  if (solver.info() != Eigen::Success) return {};
  std::vector<double> thetas;
  for (Index j = 0; j < r; ++j) thetas.push_back(wrap_angle(-std::arg(solver.eigenvalues()(j))));
  return thetas;
}

// Rotational invariance of the signal subspace.
std::vector<double> esprit_angles(const HermitianEigen& e, Index r) {
  const Index n = e.vectors.rows();
  if (n < 2) return {};
  const CMat us = e.vectors.leftCols(r);
  const CMat u1 = us.topRows(n - 1);
  const CMat u2 = us.bottomRows(n - 1);
  const CMat phi = u1.completeOrthogonalDecomposition().solve(u2);
  Eigen::ComplexEigenSolver<CMat> solver(phi, false);
  if (solver.info() != Eigen::Success) return {};
  std::vector<double> thetas;
  for (Index j = 0; j < r; ++j) thetas.push_back(wrap_angle(std::arg(solver.eigenvalues()(j))));
  return thetas;
}

double relative_error(const CMat& x, const VandermondeFactors& f) {
  const double scale = std::max(x.norm(), 1e-300);
  return (x - f.reconstruct(x.rows())).norm() / scale;
}

VandermondeFactors decompose_singular(const CMat& x, const HermitianEigen& e, Index r) {
  const CVec col = x.col(0);
  VandermondeFactors best = fit_weights(col, prony_angles(x, r));
  double best_err = best.count() == static_cast<std::size_t>(r) ? relative_error(x, best) : INFINITY;
  if (best_err > 1e-9) {
    VandermondeFactors alt = fit_weights(col, esprit_angles(e, r));
    const double alt_err = relative_error(x, alt);
    if (alt_err < best_err) best = std::move(alt);
  }
  return best;
}

}  // namespace

HermitianMatrix project_psd(const HermitianMatrix& x) {
  const HermitianEigen e = hermitian_eig(x);
  const Vec clamped = e.values.cwiseMax(0.0);
  return HermitianMatrix(e.vectors * clamped.cast<cplx>().asDiagonal() * e.vectors.adjoint());
}

HermitianMatrix project_toeplitz(const HermitianMatrix& x) {
  const CMat& m = x.matrix();
  const Index n = m.rows();
  CVec t(n);
  for (Index k = 0; k < n; ++k) {
    cplx acc = 0.0;
    for (Index i = 0; i + k < n; ++i) acc += m(i + k, i) + std::conj(m(i, i + k));
    t(k) = acc / (2.0 * static_cast<double>(n - k));
  }
  return hermitian_toeplitz(t);
}

HermitianMatrix hermitian_toeplitz(const CVec& first_column) {
  const Index n = first_column.size();
  CMat m(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      m(i, j) = i >= j ? first_column(i - j) : std::conj(first_column(j - i));
    }
  }
  m.diagonal() = m.diagonal().real().cast<cplx>();
  return HermitianMatrix(m);
}

CVec toeplitz_first_column(const HermitianMatrix& x) { return x.matrix().col(0); }

double toeplitz_defect(const CMat& x) {
  double worst = 0.0;
  for (Index j = 0; j + 1 < x.cols(); ++j) {
    for (Index i = 0; i + 1 < x.rows(); ++i) worst = std::max(worst, std::abs(x(i, j) - x(i + 1, j + 1)));
  }
  return worst;
}

double min_eigenvalue(const HermitianMatrix& x) {
  if (x.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<CMat> solver(x.matrix(), Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

DykstraResult project_psd_toeplitz_traced(const HermitianMatrix& x, int max_iters, double eps,
                                          std::vector<double>& step_norms) {
  if (max_iters < 1) throw DimensionError("project_psd_toeplitz: max_iters must be >= 1");
  const Index n = x.size();
  CMat cur = x.matrix();
  CMat p = CMat::Zero(n, n);
  CMat q = CMat::Zero(n, n);
  DykstraResult out;
  for (int it = 1; it <= max_iters; ++it) {
    const CMat y = project_psd(HermitianMatrix(cur + p)).matrix();
    p = cur + p - y;
    const CMat next = project_toeplitz(HermitianMatrix(y + q)).matrix();
    q = y + q - next;
    const double step = (next - cur).norm();
    // distance to the PSD iterate bounds how far `next` is from the cone
    const double gap = (next - y).norm();
    step_norms.push_back(step);
    cur = next;
    out.iterations = it;
    if (step <= eps && gap <= eps) {
      out.converged = true;
      break;
    }
  }
  out.x = HermitianMatrix(cur);
  return out;
}

DykstraResult project_psd_toeplitz(const HermitianMatrix& x, int max_iters, double eps) {
  std::vector<double> steps;
  steps.reserve(static_cast<std::size_t>(std::min(max_iters, 64)));
  return project_psd_toeplitz_traced(x, max_iters, eps, steps);
}

CMat VandermondeFactors::reconstruct(Index n) const {
  const CMat v = vandermonde(n, thetas);
  Vec w(static_cast<Index>(weights.size()));
  for (std::size_t l = 0; l < weights.size(); ++l) w(static_cast<Index>(l)) = weights[l];
  return v * w.cast<cplx>().asDiagonal() * v.adjoint();
}

VandermondeFactors vandermonde_decompose(const HermitianMatrix& x, double rank_tol) {
  const CMat& m = x.matrix();
  const Index n = m.rows();
  if (n == 0) return {};
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if (toeplitz_defect(m) > tol::kToeplitzFeasible * scale) {
    throw PreconditionError("vandermonde_decompose: input is not Toeplitz");
  }
  const HermitianEigen e = hermitian_eig(x);
  if (e.values(n - 1) < -tol::kPsdFeasible * scale) {
    throw PreconditionError("vandermonde_decompose: input is not PSD");
  }
  const double top = e.values(0);
  if (top <= 0.0) return {};
  Index r = 0;
  while (r < n && e.values(r) > rank_tol * top) ++r;

  if (r < n) return decompose_singular(m, e, r);

  // Nonsingular: remove the largest multiple of v(0) v(0)^H that keeps the
  // remainder PSD, which drops the rank by one.
  const CVec ones = CVec::Ones(n);
  const CVec solved = m.llt().solve(ones);
  const double w0 = 1.0 / ones.dot(solved).real();
  const CMat rest = m - w0 * ones * ones.adjoint();
  const HermitianEigen re = hermitian_eig(HermitianMatrix(rest));
  VandermondeFactors inner = decompose_singular(rest, re, n - 1);
  std::vector<double> thetas = inner.thetas;
  thetas.push_back(0.0);
  return fit_weights(m.col(0), thetas);
}

}  // namespace gidl
