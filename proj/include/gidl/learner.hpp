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


#ifndef GIDL_LEARNER_HPP
#define GIDL_LEARNER_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gidl/group_model.hpp"
#include "gidl/sparse_coder.hpp"

namespace gidl {

/// One sample per entry: d x 1 for vector groups, d x r for Orthogonal.
using Dataset = std::vector<Mat>;
using SampleCodes = std::vector<CodingVariable>;

/// q standard-normal draws scaled to unit norm (see `normalize`).
GeneratorSet init_generators(const GroupModel& g, Index q, std::uint64_t seed);

struct GeneratorUpdate {
  GeneratorSet gens;
  /// true where a generator had all-zero codes and was kept as it was.
  std::vector<bool> unchanged;
};

/// Joint least-squares update of every generator given fixed codes. Vector
/// groups solve a q x q system per frequency; Orthogonal solves the
/// (q d) x (q d) system once for all r columns.
GeneratorUpdate update_generators(const GroupModel& g, const std::vector<SampleCodes>& codes, const Dataset& data,
                                  const GeneratorSet& previous);
/// Dense (q d) x (q d) normal equations built from explicit group matrices.
GeneratorUpdate update_generators_dense(const GroupModel& g, const std::vector<SampleCodes>& codes,
                                        const Dataset& data, const GeneratorSet& previous);

/// Scales every atom to unit norm; for the orthogonal group every column is
/// scaled to unit norm instead. Zero atoms (or columns) are replaced by a
/// fresh random draw and the atom indices are returned.
std::vector<std::size_t> normalize(const GroupModel& g, GeneratorSet& gens, std::mt19937_64& rng);

/// Codes every sample, in parallel over samples. `codes` supplies warm starts
/// and receives the new codes. Returns the summed objective, accumulated in
/// sample order.
double code_all(const GroupModel& g, const GeneratorSet& gens, const Dataset& data, const SolverConfig& cfg,
                std::vector<SampleCodes>& codes, int threads = 0);
/// Single-threaded reference for code_all.
double code_all_serial(const GroupModel& g, const GeneratorSet& gens, const Dataset& data, const SolverConfig& cfg,
                       std::vector<SampleCodes>& codes);

struct TraceRow {
  int iter = 0;
  double objective = 0.0;
  std::optional<double> dist;
  double seconds = 0.0;
};

struct LearnOptions {
  Index q = 1;
  int outer_iters = 50;
  SolverConfig solver;
  std::uint64_t seed = 0;
  std::optional<GeneratorSet> truth;
  std::optional<GeneratorSet> init;
  /// OpenMP threads for the coding step; 0 keeps the runtime default.
  int threads = 0;
  /// Stop early once the relative objective change is at most this; 0 off.
  double objective_tol = 0.0;
  /// When false every trace row reports 0 seconds.
  bool record_timing = true;
  int distance_grid = 64;
};

struct LearnerState {
  GeneratorSet gens;
  std::vector<SampleCodes> codes;
  std::vector<TraceRow> history;
  std::vector<std::string> warnings;
};

/// Alternates coding of every sample, the least-squares generator update and
/// normalization for `outer_iters` rounds. Row 0 of the history describes the
/// initialization with all-zero codes; row t the objective after coding in
/// round t.
LearnerState learn(const GroupModel& g, const Dataset& data, const LearnOptions& opts);

/// Largest lambda on a log grid for which, after one coding pass from a
/// random initialization, every generator has a nonzero code somewhere.
double lambda_auto(const GroupModel& g, const Dataset& data, Index q, const SolverConfig& cfg, std::uint64_t seed,
                   std::size_t max_samples = 200);

struct CodingTiming {
  /// Mean coding-step seconds per outer iteration, one entry per repetition.
  std::vector<double> per_iteration;
  double median() const;
};

/// Times the coding step of `iters` learner rounds from the same random
/// initialization, `reps` times. Generator updates run between rounds but
/// are not timed.
CodingTiming time_coding(const GroupModel& g, const Dataset& data, Index q, const SolverConfig& cfg, int iters,
                         int reps, std::uint64_t seed, int threads = 0);

/// fft(apply(g, z, a)) = fft_multiplier(g, z) .* fft(a) for vector groups.
CVec fft_multiplier(const GroupModel& g, const CodingVariable& z);

}  // namespace gidl

#endif  // GIDL_LEARNER_HPP
