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


#ifndef GIDL_COMPLETION_HPP
#define GIDL_COMPLETION_HPP

#include <vector>

#include "gidl/sparse_coder.hpp"

namespace gidl {

struct CompletionProblem {
  /// Values at unobserved entries are ignored.
  Mat y;
  /// 1 = observed, 0 = missing; same shape as y.
  Mat mask;
  /// cfg.lambda is the first continuation stage.
  SolverConfig cfg;
  int stages = 8;
  double factor = 0.5;
};

struct CompletionResult {
  Mat y_opt;
  /// sum_j ||Z_j||_G of the final codes.
  double norm_value = 0.0;
  std::vector<CodingVariable> codes;
  /// 1/2 ||P_obs(fit - y)||^2 after each stage.
  std::vector<double> violation;
};

/// Minimizes the atomic norm subject to matching the observed entries, by a
/// quadratic-penalty continuation over decreasing lambda. Observed entries of
/// the result equal y exactly.
CompletionResult complete(const GroupModel& g, const GeneratorSet& gens, const CompletionProblem& p);

/// ||x - truth||^2 / ||truth||^2.
double relative_squared_error(const Mat& x, const Mat& truth);

}  // namespace gidl

#endif  // GIDL_COMPLETION_HPP
