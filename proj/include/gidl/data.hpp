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


#ifndef GIDL_DATA_HPP
#define GIDL_DATA_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "gidl/learner.hpp"

namespace gidl {

struct ShiftModel {
  Index d = 30;
  Index q = 3;
  Index s = 5;
  Index n = 1000;
  std::uint64_t seed = 0;
};

struct ShiftDataset {
  Dataset data;
  GeneratorSet truth;
};

/// Each sample is a sum of s terms c * T_r a_j with c ~ N(0,1) and (j, r)
/// uniform over generators and shifts. Generators are unit-norm Gaussian.
ShiftDataset gen_shift_dataset(const ShiftModel& model);

struct SyncModel {
  Index d = 3;
  Index r = 20;
  Index n = 1000;
  double sigma = 0.1;
  /// 1 gives Y = G A + E; q > 1 gives Y = sum_j c_j G_j A_j + E.
  Index q = 1;
  std::uint64_t seed = 0;
};

struct SyncLatent {
  std::vector<double> coefficients;  // c_j, all 1 in single mode
  std::vector<Mat> rotations;        // G_j
};

struct SyncDataset {
  Dataset data;
  GeneratorSet truth;  // columns of unit norm
  std::vector<SyncLatent> latents;
};

SyncDataset gen_sync_dataset(const SyncModel& model);

/// Haar-distributed orthogonal matrix: QR of a Gaussian matrix with the
/// signs of R's diagonal moved into Q.
Mat haar_orthogonal(Index d, std::mt19937_64& rng);

struct SegmentationConfig {
  Index window = 201;
  Index stride = 1;
  bool zero_mean = true;
  bool unit_norm = true;
  /// Keep only windows whose argmax lies in [first, second].
  std::optional<std::pair<Index, Index>> peak_window;
};

struct Segments {
  Mat rows;  // one window per row
  std::size_t dropped_zero = 0;
  std::size_t dropped_peak = 0;
};

Segments segment_series(const Vec& series, const SegmentationConfig& cfg);

struct EcgConfig {
  Index length = 100000;
  double rate_hz = 360.0;
  double heart_rate_hz = 1.2;
  /// Relative jitter of each beat interval.
  double jitter = 0.05;
  double wander = 0.1;
  double noise = 0.01;
  std::uint64_t seed = 0;
};

/// Quasi-periodic spike train: a sharp biphasic pulse per beat with a small
/// broad trailing wave, plus slow baseline wander and white noise.
Vec synth_ecg_like(const EcgConfig& cfg);
/// Beat onsets (in seconds) used by synth_ecg_like for the same config.
std::vector<double> ecg_beat_times(const EcgConfig& cfg);

// CSV and sidecar I/O. Numbers are written with 17 significant digits.

/// Reads a rectangular numeric CSV. Errors carry the 1-based line number.
Mat read_csv(const std::string& path);
void write_csv(const std::string& path, const Mat& rows);
/// Reads a single-column series (a single row is accepted too).
Vec read_series(const std::string& path);

/// Vector datasets: one sample per row.
Dataset dataset_from_rows(const Mat& rows);
Mat rows_from_dataset(const Dataset& data);
/// Matrix datasets: each d x r sample flattened row-major into one row.
Dataset dataset_from_flat(const Mat& rows, Index d, Index r);
Mat flat_from_dataset(const Dataset& data);

struct MatrixShape {
  Index d = 0;
  Index r = 0;
  Index n = 0;
};
void write_sidecar(const std::string& path, const MatrixShape& shape);
MatrixShape read_sidecar(const std::string& path);
/// Conventional sidecar path for a data file: "<path>.json".
std::string sidecar_path(const std::string& data_path);

/// Reads a dataset for group `g`. For matrix groups a sidecar, when present,
/// must agree with the group shape and the row count.
Dataset read_dataset(const std::string& path, const GroupModel& g);
void write_dataset(const std::string& path, const Dataset& data);
GeneratorSet read_generators(const std::string& path, const GroupModel& g);
void write_generators(const std::string& path, const GeneratorSet& gens);
/// 0/1 entries only.
Mat read_mask(const std::string& path);

}  // namespace gidl

#endif  // GIDL_DATA_HPP
