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


#include <algorithm>
#include <cmath>
#include <numbers>

#include "gidl/data.hpp"

namespace gidl {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Vec shifted(const Vec& a, Index r) {
  const Index d = a.size();
  Vec out(d);
  for (Index k = 0; k < d; ++k) out(k) = a(((k - r) % d + d) % d);
  return out;
}

Mat gaussian(Index rows, Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Mat m(rows, cols);
  for (Index c = 0; c < cols; ++c) {
    for (Index r = 0; r < rows; ++r) m(r, c) = normal(rng);
  }
  return m;
}

double pulse(double t) {
  constexpr double w = 0.01;
  const double r_wave = std::exp(-t * t / (2.0 * w * w));
  const double s = t - 2.5 * w;
  const double s_wave = -0.25 * std::exp(-s * s / (2.0 * w * w));
  const double u = t - 0.25;
  const double t_wave = 0.2 * std::exp(-u * u / (2.0 * 0.04 * 0.04));
  return r_wave + s_wave + t_wave;
}

}  // namespace

Mat haar_orthogonal(Index d, std::mt19937_64& rng) {
  const Mat x = gaussian(d, d, rng);
  Eigen::HouseholderQR<Mat> qr(x);
  Mat q = qr.householderQ() * Mat::Identity(d, d);
  const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index k = 0; k < d; ++k) {
    if (r(k, k) < 0.0) q.col(k) *= -1.0;
  }
  return q;
}

ShiftDataset gen_shift_dataset(const ShiftModel& model) {
  if (model.d < 1 || model.q < 1 || model.s < 1 || model.n < 0) throw DimensionError("gen_shift_dataset: invalid model");
  std::mt19937_64 rng(model.seed);
  ShiftDataset out;
  for (Index j = 0; j < model.q; ++j) {
    Vec a = gaussian(model.d, 1, rng).col(0);
    out.truth.atoms.push_back(a / a.norm());
  }
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_int_distribution<Index> pick_gen(0, model.q - 1);
  std::uniform_int_distribution<Index> pick_shift(0, model.d - 1);
  out.data.reserve(static_cast<std::size_t>(model.n));
  for (Index i = 0; i < model.n; ++i) {
    Vec y = Vec::Zero(model.d);
    for (Index t = 0; t < model.s; ++t) {
      const Index j = pick_gen(rng);
      const Index r = pick_shift(rng);
      const double c = normal(rng);
      y += c * shifted(out.truth[static_cast<std::size_t>(j)].col(0), r);
    }
    out.data.push_back(y);
  }
  return out;
}

SyncDataset gen_sync_dataset(const SyncModel& model) {
  if (model.d < 1 || model.r < 1 || model.q < 1 || model.n < 0 || model.sigma < 0.0) {
    throw DimensionError("gen_sync_dataset: invalid model");
  }
  std::mt19937_64 rng(model.seed);
  SyncDataset out;
  for (Index j = 0; j < model.q; ++j) {
    Mat a = gaussian(model.d, model.r, rng);
    for (Index c = 0; c < a.cols(); ++c) a.col(c) /= a.col(c).norm();
    out.truth.atoms.push_back(a);
  }
  std::normal_distribution<double> normal(0.0, 1.0);
  for (Index i = 0; i < model.n; ++i) {
    SyncLatent lat;
    Mat y = Mat::Zero(model.d, model.r);
    for (Index j = 0; j < model.q; ++j) {
      const double c = model.q == 1 ? 1.0 : normal(rng);
      Mat g = haar_orthogonal(model.d, rng);
      y += c * g * out.truth[static_cast<std::size_t>(j)];
      lat.coefficients.push_back(c);
      lat.rotations.push_back(std::move(g));
    }
    y += model.sigma * gaussian(model.d, model.r, rng);
    out.data.push_back(std::move(y));
    out.latents.push_back(std::move(lat));
  }
  return out;
}

Segments segment_series(const Vec& series, const SegmentationConfig& cfg) {
  if (cfg.window < 1 || cfg.stride < 1) throw DimensionError("segment_series: window and stride must be >= 1");
  if (series.size() < cfg.window) throw DimensionError("segment_series: series is shorter than the window");
  if (cfg.peak_window && (cfg.peak_window->first < 0 || cfg.peak_window->second < cfg.peak_window->first)) {
    throw DimensionError("segment_series: invalid peak window");
  }
  Segments out;
  std::vector<Vec> kept;
  for (Index start = 0; start + cfg.window <= series.size(); start += cfg.stride) {
    Vec w = series.segment(start, cfg.window);
    if (cfg.zero_mean) w.array() -= w.mean();
    const double norm = w.norm();
    if (norm == 0.0 || (cfg.zero_mean && norm <= 1e-14 * std::max(1.0, series.segment(start, cfg.window).cwiseAbs().maxCoeff()))) {
      ++out.dropped_zero;
      continue;
    }
    if (cfg.unit_norm) w /= norm;
    if (cfg.peak_window) {
      Index arg = 0;
      w.maxCoeff(&arg);
      if (arg < cfg.peak_window->first || arg > cfg.peak_window->second) {
        ++out.dropped_peak;
        continue;
      }
    }
    kept.push_back(std::move(w));
  }
  out.rows.resize(static_cast<Index>(kept.size()), cfg.window);
  for (std::size_t i = 0; i < kept.size(); ++i) out.rows.row(static_cast<Index>(i)) = kept[i].transpose();
  return out;
}

std::vector<double> ecg_beat_times(const EcgConfig& cfg) {
  if (cfg.length < 1 || !(cfg.rate_hz > 0.0) || !(cfg.heart_rate_hz > 0.0)) {
    throw DimensionError("synth_ecg_like: invalid configuration");
  }
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double period = 1.0 / cfg.heart_rate_hz;
  const double duration = static_cast<double>(cfg.length) / cfg.rate_hz;
  std::vector<double> beats;
  double t = unit(rng) * period;
  while (t < duration) {
    beats.push_back(t);
    t += period * (1.0 + cfg.jitter * (2.0 * unit(rng) - 1.0));
  }
  return beats;
}

Vec synth_ecg_like(const EcgConfig& cfg) {
  const std::vector<double> beats = ecg_beat_times(cfg);
  // a separate stream for the noise keeps the beat times reusable
  std::mt19937_64 rng(cfg.seed ^ 0xa5a5a5a5a5a5a5a5ULL);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double wander_phase = kTwoPi * unit(rng);
  Vec x(cfg.length);
  for (Index k = 0; k < cfg.length; ++k) {
    const double t = static_cast<double>(k) / cfg.rate_hz;
    x(k) = cfg.wander * std::sin(kTwoPi * 0.25 * t + wander_phase) + cfg.noise * normal(rng);
  }
  for (double b : beats) {
    const Index lo = std::max<Index>(0, static_cast<Index>(std::floor((b - 0.2) * cfg.rate_hz)));
    const Index hi = std::min<Index>(cfg.length - 1, static_cast<Index>(std::ceil((b + 0.6) * cfg.rate_hz)));
    for (Index k = lo; k <= hi; ++k) x(k) += pulse(static_cast<double>(k) / cfg.rate_hz - b);
  }
  return x;
}

}  // namespace gidl
