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


#ifndef GIDL_METRICS_HPP
#define GIDL_METRICS_HPP

#include <vector>

#include "gidl/group_model.hpp"

namespace gidl {

/// Best orbit element of a learned generator for one reference generator.
struct OrbitMatch {
  Index learned = 0;  // index of the matched learned generator
  int sign = 1;
  Index shift = 0;     // integer or interpolated shift index
  double phase = 0.0;  // continuous shift in [0,1)
  Mat q;               // orthogonal alignment
};

struct DistanceReport {
  std::vector<double> per_generator;
  double mean = 0.0;
  std::vector<OrbitMatch> matches;
};

/// (1/q) sum_i min over learned orbits of ||a_i - d||^2, with the reference
/// on the left. Not symmetric. `grid` is the number of phase samples per unit
/// shift for continuous shifts.
DistanceReport dictionary_distance(const GroupModel& g, const GeneratorSet& reference, const GeneratorSet& learned,
                                   int grid = 64);

struct ProcrustesResult {
  Mat q;
  double residual = 0.0;  // ||A1 - Q A2||_F^2
};

/// Orthogonal Q minimizing ||A1 - Q A2||_F, from the SVD of A1 A2^T.
ProcrustesResult procrustes_align(const Mat& a1, const Mat& a2);

/// max over phi of <a, G(phi) b> in absolute value for the continuous-shift
/// group on odd-length signals, found by an FFT grid of `grid` points per
/// unit shift and golden-section refinement. Returns the signed value.
double best_phase_correlation(const Vec& a, const Vec& b, int grid, double* phase = nullptr);

}  // namespace gidl

#endif  // GIDL_METRICS_HPP
