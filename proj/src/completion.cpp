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


#include "gidl/completion.hpp"

namespace gidl {

CompletionResult complete(const GroupModel& g, const GeneratorSet& gens, const CompletionProblem& p) {
  if (p.mask.rows() != p.y.rows() || p.mask.cols() != p.y.cols()) throw DimensionError("complete: mask shape differs from y");
  if (p.mask.sum() <= 0.0) throw PreconditionError("complete: no observed entries");
  if (p.stages < 1) throw PreconditionError("complete: stages must be >= 1");
  if (!(p.factor > 0.0 && p.factor <= 1.0)) throw PreconditionError("complete: factor must lie in (0,1]");

  // placeholders at missing entries never reach the loss
  const Mat y = p.y.cwiseProduct(p.mask);
  SolverConfig cfg = p.cfg;
  cfg.warm_start = true;

  CompletionResult out;
  CodingResult res;
  for (int s = 0; s < p.stages; ++s) {
    res = code_sample(g, gens, y, cfg, s == 0 ? nullptr : &res.codes, &p.mask);
    out.violation.push_back(0.5 * (res.fit - y).cwiseProduct(p.mask).squaredNorm());
    cfg.lambda *= p.factor;
  }
  out.codes = res.codes;
  out.norm_value = 0.0;
  for (const auto& z : out.codes) out.norm_value += atomic_norm(g, z);
  out.y_opt = res.fit;
  for (Index c = 0; c < y.cols(); ++c) {
    for (Index r = 0; r < y.rows(); ++r) {
      if (p.mask(r, c) != 0.0) out.y_opt(r, c) = p.y(r, c);
    }
  }
  return out;
}

double relative_squared_error(const Mat& x, const Mat& truth) {
  if (x.rows() != truth.rows() || x.cols() != truth.cols()) throw DimensionError("relative_squared_error: shape mismatch");
  const double denom = truth.squaredNorm();
  if (denom == 0.0) throw PreconditionError("relative_squared_error: zero reference");
  return (x - truth).squaredNorm() / denom;
}

}  // namespace gidl
