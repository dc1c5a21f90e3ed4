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


#ifndef GIDL_TOEPLITZ_HPP
#define GIDL_TOEPLITZ_HPP

#include <vector>

#include "gidl/numerics.hpp"

namespace gidl {

/// Nearest PSD matrix in Frobenius norm: negative eigenvalues clamped to 0.
HermitianMatrix project_psd(const HermitianMatrix& x);

/// Orthogonal projection onto Hermitian Toeplitz matrices. Diagonal k gets
/// the mean of the entries on diagonal k and the conjugates of diagonal -k.
HermitianMatrix project_toeplitz(const HermitianMatrix& x);

struct DykstraResult {
  HermitianMatrix x;
  bool converged = false;
  int iterations = 0;
};

/// Projection onto PSD Hermitian Toeplitz matrices by Dykstra's alternating
/// scheme with correction terms. Stops once successive Toeplitz iterates
/// differ by at most `eps` in Frobenius norm and the last Toeplitz iterate is
/// within `eps` of the last PSD iterate, or after `max_iters` sweeps. The
/// returned matrix is the Toeplitz iterate.
DykstraResult project_psd_toeplitz(const HermitianMatrix& x, int max_iters = 500, double eps = 1e-9);

/// Same, also recording ||X_k - X_{k-1}||_F for every sweep.
DykstraResult project_psd_toeplitz_traced(const HermitianMatrix& x, int max_iters, double eps,
                                          std::vector<double>& step_norms);

/// Hermitian Toeplitz matrix with the given first column.
HermitianMatrix hermitian_toeplitz(const CVec& first_column);
CVec toeplitz_first_column(const HermitianMatrix& x);

/// Largest |X(i,j) - X(i+1,j+1)| over all bands.
double toeplitz_defect(const CMat& x);
double min_eigenvalue(const HermitianMatrix& x);

struct VandermondeFactors {
  std::vector<double> thetas;   // in [0, 2 pi)
  std::vector<double> weights;  // > 0
  std::size_t count() const { return thetas.size(); }
  /// sum_k w_k v(theta_k) v(theta_k)^H with v(theta)_n = e^{i n theta}.
  CMat reconstruct(Index n) const;
};

/// Factors X = V diag(w) V^H of a PSD Hermitian Toeplitz matrix. The number
/// of atoms is the numerical rank at `rank_tol` times the largest eigenvalue,
/// or n when X is nonsingular (one atom is then pinned at theta = 0).
VandermondeFactors vandermonde_decompose(const HermitianMatrix& x, double rank_tol = tol::kRankRelative);

}  // namespace gidl

#endif  // GIDL_TOEPLITZ_HPP
