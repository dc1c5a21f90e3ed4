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


#include "gidl/metrics.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace gidl {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Candidate {
  double dist = std::numeric_limits<double>::infinity();
  OrbitMatch match;
};

Candidate match_vector(const GroupModel& g, const Vec& a, const Vec& b, int grid) {
  Candidate best;
  const double base = a.squaredNorm() + b.squaredNorm();
  auto consider = [&](double corr, Index shift, double phase) {
    const double dist = base - 2.0 * std::abs(corr);
    if (dist < best.dist) {
      best.dist = dist;
      best.match.sign = corr >= 0.0 ? 1 : -1;
      best.match.shift = shift;
      best.match.phase = phase;
    }
  };
  switch (g.kind()) {
    case GroupKind::Regular:
      consider(a.dot(b), 0, 0.0);
      break;
    case GroupKind::IntShift: {
      const Vec corr = circular_correlate(b, a);
      for (Index r = 0; r < corr.size(); ++r) consider(corr(r), r, 0.0);
      break;
    }
    case GroupKind::InterpShift: {
      const Index n = g.shift_code_length();
      for (Index s = 0; s < n; ++s) {
        const Vec moved = apply(g, element_code(g, GroupParameter(s)), b);
        consider(a.dot(moved), s, 0.0);
      }
      break;
    }
    case GroupKind::CtsShift: {
      double phase = 0.0;
      const double corr = best_phase_correlation(a, b, grid, &phase);
      consider(corr, 0, phase);
      break;
    }
    case GroupKind::Orthogonal:
      break;
  }
  best.dist = std::max(best.dist, 0.0);
  return best;
}

}  // namespace

double best_phase_correlation(const Vec& a, const Vec& b, int grid, double* phase) {
  if (a.size() != b.size()) throw DimensionError("best_phase_correlation: length mismatch");
  if (grid < 1) throw DimensionError("best_phase_correlation: grid must be >= 1");
  const FourierBasis basis = FourierBasis::for_length(a.size());
  const Index d = basis.d_half();
  const CVec at = dft_forward(a, basis);
  const CVec bt = dft_forward(b, basis);
  CVec w(2 * d + 1);
  for (Index k = -d; k <= d; ++k) w(k + d) = std::conj(at(k + d)) * bt(k + d);

  // p(phi) = Re sum_k w_k e^{2 pi i k phi}
  auto p = [&](double phi) {
    cplx s = 0.0;
    for (Index k = -d; k <= d; ++k) s += w(k + d) * std::polar(1.0, kTwoPi * std::fmod(static_cast<double>(k) * phi, 1.0));
    return s.real();
  };

  const Index n = static_cast<Index>(grid) * a.size();
  CVec spread = CVec::Zero(n);
  for (Index k = -d; k <= d; ++k) spread(((k % n) + n) % n) += w(k + d);
  // sum_k W_k e^{+2 pi i k t / n} = n * ifft
  const Vec samples = (ifft(spread) * static_cast<double>(n)).real();
  Index best_t = 0;
  for (Index t = 1; t < n; ++t) {
    if (std::abs(samples(t)) > std::abs(samples(best_t))) best_t = t;
  }

  // golden-section on |p| inside the neighbouring grid cells
  const double h = 1.0 / static_cast<double>(n);
  double lo = (static_cast<double>(best_t) - 1.0) * h;
  double hi = (static_cast<double>(best_t) + 1.0) * h;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = std::abs(p(x1));
  double f2 = std::abs(p(x2));
  while (hi - lo > 1e-10) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = std::abs(p(x2));
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = std::abs(p(x1));
    }
  }
  double best_phi = 0.5 * (lo + hi);
  double best_val = p(best_phi);
  const double grid_phi = static_cast<double>(best_t) * h;
  const double grid_val = p(grid_phi);
  if (std::abs(grid_val) > std::abs(best_val)) {
    best_phi = grid_phi;
    best_val = grid_val;
  }
  best_phi -= std::floor(best_phi);
  if (phase != nullptr) *phase = best_phi;
  return best_val;
}

ProcrustesResult procrustes_align(const Mat& a1, const Mat& a2) {
  if (a1.rows() != a2.rows() || a1.cols() != a2.cols()) throw DimensionError("procrustes_align: shape mismatch");
  const SvdResult s = svd(a1 * a2.transpose());
  ProcrustesResult out;
  out.q = s.U * s.V.transpose();
  out.residual = (a1 - out.q * a2).squaredNorm();
  return out;
}

DistanceReport dictionary_distance(const GroupModel& g, const GeneratorSet& reference, const GeneratorSet& learned,
                                   int grid) {
  if (reference.size() == 0 || learned.size() == 0) throw DimensionError("dictionary_distance: empty generator set");
  if (grid < 1) throw DimensionError("dictionary_distance: grid must be >= 1");
  for (const Mat& a : reference.atoms) check_generator(g, a);
  for (const Mat& b : learned.atoms) check_generator(g, b);

  DistanceReport report;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    Candidate best;
    for (std::size_t j = 0; j < learned.size(); ++j) {
      Candidate c;
      if (g.kind() == GroupKind::Orthogonal) {
        const ProcrustesResult pr = procrustes_align(reference[i], learned[j]);
        c.dist = pr.residual;
        c.match.q = pr.q;
      } else {
        c = match_vector(g, reference[i].col(0), learned[j].col(0), grid);
      }
      c.match.learned = static_cast<Index>(j);
      if (c.dist < best.dist) best = c;
    }
    report.per_generator.push_back(best.dist);
    report.matches.push_back(best.match);
  }
  double sum = 0.0;
  for (double v : report.per_generator) sum += v;
  report.mean = sum / static_cast<double>(report.per_generator.size());
  return report;
}

}  // namespace gidl
