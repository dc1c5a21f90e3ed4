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


#ifndef GIDL_SPARSE_CODER_HPP
#define GIDL_SPARSE_CODER_HPP

#include <vector>

#include "gidl/group_model.hpp"

namespace gidl {

struct LineSearch {
  double eta0 = 1.0;
  double beta = 0.5;
  double c = 1e-4;
  int max_backtracks = 40;
};

struct SolverConfig {
  double lambda = 0.1;
  int max_iters = 5;
  LineSearch line_search;
  /// Dykstra sweeps per certificate projection (continuous shifts only).
  int dykstra_inner_iters = 1;
  double dykstra_eps = 1e-9;
  /// Stop when the relative objective change falls to this value; 0 runs
  /// all max_iters iterations.
  double tolerance = 0.0;
  /// Seed each call with the previous codes when the caller supplies them.
  /// false reproduces the cold start X = 0 on every call.
  bool warm_start = true;
  /// After the Dykstra sweeps, lift the diagonal of each certificate by its
  /// most negative eigenvalue so every stored certificate is exactly PSD.
  bool enforce_feasible = true;

  /// Throws PreconditionError on lambda <= 0, beta or c outside (0,1), or
  /// nonpositive budgets.
  void validate() const;
};

struct CodingResult {
  std::vector<CodingVariable> codes;
  double objective = 0.0;
  Mat fit;
  bool converged = false;
  int iterations = 0;
  /// Objective after every iteration, starting with the initial point.
  std::vector<double> history;
};

/// sum_j apply(g, codes[j], gens[j]).
Mat reconstruct(const GroupModel& g, const GeneratorSet& gens, const std::vector<CodingVariable>& codes);

/// 1/2 ||mask .* (y - fit)||^2 + lambda sum_j ||Z_j||_G. A null mask means
/// every entry is observed.
double objective(const GroupModel& g, const GeneratorSet& gens, const Mat& y,
                 const std::vector<CodingVariable>& codes, double lambda, const Mat* mask = nullptr);

/// Gradient of the smooth part 1/2 ||mask .* (y - fit)||^2 per generator.
std::vector<CodingVariable> smooth_gradient(const GroupModel& g, const GeneratorSet& gens, const Mat& y,
                                            const std::vector<CodingVariable>& codes,
                                            const Mat* mask = nullptr);

/// Proximal (or, for continuous shifts, projected) gradient descent with a
/// backtracking line search. Accepted steps never increase the objective.
CodingResult code_sample(const GroupModel& g, const GeneratorSet& gens, const Mat& y, const SolverConfig& cfg,
                         const std::vector<CodingVariable>* warm = nullptr, const Mat* mask = nullptr);

/// Runs code_sample at lambda, lambda*factor, ..., warm-starting each stage.
/// Every stage's objective (at its own lambda) is appended to `history`.
CodingResult code_continuation(const GroupModel& g, const GeneratorSet& gens, const Mat& y,
                               const SolverConfig& cfg, int stages, double factor,
                               const Mat* mask = nullptr);

/// The fit of code_sample.
Mat denoise(const GroupModel& g, const GeneratorSet& gens, const Mat& y, const SolverConfig& cfg);

}  // namespace gidl

#endif  // GIDL_SPARSE_CODER_HPP
