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


#include "gidl/learner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>

#include <omp.h>

#include "gidl/metrics.hpp"

namespace gidl {

namespace {

bool is_zero_code(const CodingVariable& z) { return inner_product(z, z) == 0.0; }

std::vector<bool> active_generators(const std::vector<SampleCodes>& codes, std::size_t q) {
  std::vector<bool> active(q, false);
  for (const auto& sample : codes) {
    if (sample.size() != q) throw DimensionError("update_generators: every sample needs one code per generator");
    for (std::size_t j = 0; j < q; ++j) {
      if (!active[j] && !is_zero_code(sample[j])) active[j] = true;
    }
  }
  return active;
}

template <class M>
M solve_normal(const M& normal, const M& rhs) {
  M reg = normal;
  reg.diagonal().array() += tol::kRidge;
  Eigen::LDLT<M> ldlt(reg);
  if (ldlt.info() == Eigen::Success) {
    M x = ldlt.solve(rhs);
    if (x.allFinite()) return x;
  }
  return reg.completeOrthogonalDecomposition().solve(rhs);
}

void check_data(const GroupModel& g, const Dataset& data) {
  for (const Mat& y : data) {
    if (y.rows() != g.dim() || y.cols() != g.cols()) throw DimensionError("sample shape does not match the group");
  }
}

// Explicit d x d matrix of a coding variable.
Mat dense_operator(const GroupModel& g, const CodingVariable& z) {
  if (g.kind() == GroupKind::Orthogonal) return std::get<OrthCode>(z).Z;
  const Index d = g.dim();
  Mat out(d, d);
  for (Index k = 0; k < d; ++k) out.col(k) = apply(g, z, Vec::Unit(d, k));
  return out;
}

GeneratorUpdate finish(const GeneratorSet& previous, const std::vector<bool>& active,
                       const std::vector<std::size_t>& slot, const Mat& stacked, Index d) {
  GeneratorUpdate out{previous, std::vector<bool>(previous.size(), true)};
  for (std::size_t j = 0; j < previous.size(); ++j) {
    if (!active[j]) continue;
    out.gens[j] = stacked.middleRows(static_cast<Index>(slot[j]) * d, d);
    out.unchanged[j] = false;
  }
  return out;
}

double timed_seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

CVec fft_multiplier(const GroupModel& g, const CodingVariable& z) {
  check_code(g, z);
  const Index d = g.dim();
  switch (g.kind()) {
    case GroupKind::Regular: return CVec::Constant(d, std::get<RegularCode>(z).c);
    case GroupKind::IntShift: return fft(std::get<ShiftCode>(z).x);
    case GroupKind::InterpShift: return detail::shift_multiplier(std::get<ShiftCode>(z).x, d, g.subdivisions());
    case GroupKind::CtsShift: {
      const CVec c = std::get<CtsCode>(z).multiplier();
      const Index h = g.d_half();
      CVec m(d);
      for (Index j = 0; j < d; ++j) m(j) = std::conj(c(detail::centred_frequency(j, d) + h));
      return m;
    }
    case GroupKind::Orthogonal: break;
  }
  throw DimensionError("fft_multiplier: not a vector group");
}

GeneratorSet init_generators(const GroupModel& g, Index q, std::uint64_t seed) {
  if (q < 1) throw DimensionError("init_generators: q must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  GeneratorSet gens;
  for (Index j = 0; j < q; ++j) {
    Mat a(g.dim(), g.cols());
    for (Index c = 0; c < a.cols(); ++c) {
      for (Index r = 0; r < a.rows(); ++r) a(r, c) = normal(rng);
    }
    gens.atoms.push_back(std::move(a));
  }
  normalize(g, gens, rng);
  return gens;
}

GeneratorUpdate update_generators(const GroupModel& g, const std::vector<SampleCodes>& codes, const Dataset& data,
                                  const GeneratorSet& previous) {
  if (codes.size() != data.size()) throw DimensionError("update_generators: one code set per sample is required");
  check_data(g, data);
  const std::size_t q = previous.size();
  const std::vector<bool> active = active_generators(codes, q);
  std::vector<std::size_t> slot(q, 0);
  std::vector<std::size_t> members;
  for (std::size_t j = 0; j < q; ++j) {
    if (active[j]) {
      slot[j] = members.size();
      members.push_back(j);
    }
  }
  const Index qa = static_cast<Index>(members.size());
  const Index d = g.dim();
  const std::size_t n = data.size();
  if (qa == 0) return GeneratorUpdate{previous, std::vector<bool>(q, true)};

  if (g.kind() == GroupKind::Orthogonal) return update_generators_dense(g, codes, data, previous);

  if (g.kind() == GroupKind::Regular) {
    // y_i = sum_j c_ij a_j, a single q x q system with d right-hand sides
    Mat normal = Mat::Zero(qa, qa);
    Mat rhs = Mat::Zero(qa, d);
    Vec c(qa);
    for (std::size_t i = 0; i < n; ++i) {
      for (Index k = 0; k < qa; ++k) c(k) = std::get<RegularCode>(codes[i][members[k]]).c;
      normal.noalias() += c * c.transpose();
      rhs.noalias() += c * data[i].col(0).transpose();
    }
    const Mat a = solve_normal(normal, rhs);
    GeneratorUpdate out{previous, std::vector<bool>(q, true)};
    for (Index k = 0; k < qa; ++k) {
      out.gens[members[k]] = a.row(k).transpose();
      out.unchanged[members[k]] = false;
    }
    return out;
  }

  // Shift groups are diagonal in the Fourier domain: one q x q system per bin.
  std::vector<CMat> mult(n, CMat(d, qa));
  CMat yf(d, static_cast<Index>(n));
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
    for (Index k = 0; k < qa; ++k) mult[i].col(k) = fft_multiplier(g, codes[i][members[k]]);
    yf.col(i) = fft(Vec(data[i].col(0)));
  }
  CMat af(d, qa);
#pragma omp parallel for schedule(static)
  for (Index j = 0; j < d; ++j) {
    CMat normal = CMat::Zero(qa, qa);
    CVec rhs = CVec::Zero(qa);
    for (std::size_t i = 0; i < n; ++i) {
      const CVec m = mult[i].row(j).transpose();
      normal.noalias() += m.conjugate() * m.transpose();
      rhs.noalias() += m.conjugate() * yf(j, static_cast<Index>(i));
    }
    af.row(j) = solve_normal<CMat>(normal, rhs).transpose();
  }
  Mat stacked(qa * d, 1);
  for (Index k = 0; k < qa; ++k) stacked.middleRows(k * d, d) = ifft_real(af.col(k));
  return finish(previous, active, slot, stacked, d);
}

GeneratorUpdate update_generators_dense(const GroupModel& g, const std::vector<SampleCodes>& codes,
                                        const Dataset& data, const GeneratorSet& previous) {
  if (codes.size() != data.size()) throw DimensionError("update_generators: one code set per sample is required");
  check_data(g, data);
  const std::size_t q = previous.size();
  const std::vector<bool> active = active_generators(codes, q);
  std::vector<std::size_t> slot(q, 0);
  std::vector<std::size_t> members;
  for (std::size_t j = 0; j < q; ++j) {
    if (active[j]) {
      slot[j] = members.size();
      members.push_back(j);
    }
  }
  const Index qa = static_cast<Index>(members.size());
  if (qa == 0) return GeneratorUpdate{previous, std::vector<bool>(q, true)};
  const Index d = g.dim();
  Mat normal = Mat::Zero(qa * d, qa * d);
  Mat rhs = Mat::Zero(qa * d, g.cols());
  Mat block(d, qa * d);
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (Index k = 0; k < qa; ++k) block.middleCols(k * d, d) = dense_operator(g, codes[i][members[k]]);
    normal.noalias() += block.transpose() * block;
    rhs.noalias() += block.transpose() * data[i];
  }
  return finish(previous, active, slot, solve_normal(normal, rhs), d);
}

std::vector<std::size_t> normalize(const GroupModel& g, GeneratorSet& gens, std::mt19937_64& rng) {
  std::vector<std::size_t> replaced;
  std::normal_distribution<double> normal(0.0, 1.0);
  const bool by_column = g.kind() == GroupKind::Orthogonal;
  auto fix = [&](auto&& block) {
    const double norm = block.norm();
    if (norm > 0.0 && std::isfinite(norm)) {
      block /= norm;
      return false;
    }
    for (Index c = 0; c < block.cols(); ++c) {
      for (Index r = 0; r < block.rows(); ++r) block(r, c) = normal(rng);
    }
    block /= block.norm();
    return true;
  };
  for (std::size_t j = 0; j < gens.size(); ++j) {
    Mat& a = gens[j];
    bool redrawn = false;
    if (by_column) {
      for (Index c = 0; c < a.cols(); ++c) redrawn = fix(a.col(c)) || redrawn;
    } else {
      redrawn = fix(a);
    }
    if (redrawn) replaced.push_back(j);
  }
  return replaced;
}

double code_all_serial(const GroupModel& g, const GeneratorSet& gens, const Dataset& data, const SolverConfig& cfg,
                       std::vector<SampleCodes>& codes) {
  codes.resize(data.size());
  double total = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    CodingResult r = code_sample(g, gens, data[i], cfg, &codes[i]);
    codes[i] = std::move(r.codes);
    total += r.objective;
  }
  return total;
}

double code_all(const GroupModel& g, const GeneratorSet& gens, const Dataset& data, const SolverConfig& cfg,
                std::vector<SampleCodes>& codes, int threads) {
  codes.resize(data.size());
  std::vector<double> objectives(data.size(), 0.0);
  std::exception_ptr failure;
  const int team = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(static) num_threads(team)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(data.size()); ++i) {
    try {
      CodingResult r = code_sample(g, gens, data[i], cfg, &codes[i]);
      codes[i] = std::move(r.codes);
      objectives[i] = r.objective;
    } catch (...) {
#pragma omp critical(gidl_code_all_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  double total = 0.0;
  for (double v : objectives) total += v;
  return total;
}

LearnerState learn(const GroupModel& g, const Dataset& data, const LearnOptions& opts) {
  if (data.empty()) throw DimensionError("learn: empty dataset");
  if (opts.q < 1) throw DimensionError("learn: q must be >= 1");
  if (opts.outer_iters < 0) throw DimensionError("learn: outer_iters must be >= 0");
  check_data(g, data);
  opts.solver.validate();

  const auto start = std::chrono::steady_clock::now();
  LearnerState state;
  state.gens = opts.init ? *opts.init : init_generators(g, opts.q, opts.seed);
  if (static_cast<Index>(state.gens.size()) != opts.q) throw DimensionError("learn: initial generator count differs from q");
  for (const Mat& a : state.gens.atoms) check_generator(g, a);
  std::mt19937_64 rng(opts.seed ^ 0x9e3779b97f4a7c15ULL);

  auto distance = [&]() -> std::optional<double> {
    if (!opts.truth) return std::nullopt;
    return dictionary_distance(g, *opts.truth, state.gens, opts.distance_grid).mean;
  };
  auto seconds = [&]() { return opts.record_timing ? timed_seconds(start) : 0.0; };

  double initial = 0.0;
  for (const Mat& y : data) initial += 0.5 * y.squaredNorm();
  state.history.push_back({0, initial, distance(), seconds()});

  double previous = initial;
  for (int it = 1; it <= opts.outer_iters; ++it) {
    const double obj = code_all(g, state.gens, data, opts.solver, state.codes, opts.threads);
    if (!std::isfinite(obj)) throw NumericalError("non-finite objective in round " + std::to_string(it));
    GeneratorUpdate upd = update_generators(g, state.codes, data, state.gens);
    for (std::size_t j = 0; j < upd.unchanged.size(); ++j) {
      if (upd.unchanged[j]) {
        state.warnings.push_back("round " + std::to_string(it) + ": generator " + std::to_string(j) +
                                 " has all-zero codes and was left unchanged");
      }
    }
    state.gens = std::move(upd.gens);
    for (std::size_t j : normalize(g, state.gens, rng)) {
      state.warnings.push_back("round " + std::to_string(it) + ": generator " + std::to_string(j) +
                               " vanished and was redrawn");
    }
    state.history.push_back({it, obj, distance(), seconds()});
    if (opts.objective_tol > 0.0 && std::abs(previous - obj) <= opts.objective_tol * std::max(1.0, std::abs(obj))) {
      break;
    }
    previous = obj;
  }
  return state;
}

double lambda_auto(const GroupModel& g, const Dataset& data, Index q, const SolverConfig& cfg, std::uint64_t seed,
                   std::size_t max_samples) {
  if (data.empty()) throw DimensionError("lambda_auto: empty dataset");
  const Dataset subset(data.begin(), data.begin() + static_cast<std::ptrdiff_t>(std::min(max_samples, data.size())));
  const GeneratorSet gens = init_generators(g, q, seed);
  auto healthy = [&](double lambda) {
    SolverConfig c = cfg;
    c.lambda = lambda;
    c.warm_start = false;
    std::vector<SampleCodes> codes;
    code_all(g, gens, subset, c, codes);
    const std::vector<bool> active = active_generators(codes, gens.size());
    for (bool a : active) {
      if (!a) return false;
    }
    return true;
  };
  bool found = false;
  double lo = 0.0;
  for (int e = 1; e >= -4; --e) {
    if (healthy(std::pow(10.0, e))) {
      lo = e;
      found = true;
      break;
    }
  }
  if (!found) return 1e-4;
  if (lo == 1.0) return 10.0;
  double hi = lo + 1.0;
  for (int k = 0; k < 8; ++k) {
    const double mid = 0.5 * (lo + hi);
    if (healthy(std::pow(10.0, mid))) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::pow(10.0, lo);
}

double CodingTiming::median() const {
  if (per_iteration.empty()) return 0.0;
  std::vector<double> v = per_iteration;
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 == 1 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

CodingTiming time_coding(const GroupModel& g, const Dataset& data, Index q, const SolverConfig& cfg, int iters,
                         int reps, std::uint64_t seed, int threads) {
  if (iters < 1 || reps < 1) throw DimensionError("time_coding: iters and reps must be >= 1");
  check_data(g, data);
  CodingTiming out;
  for (int rep = 0; rep < reps; ++rep) {
    GeneratorSet gens = init_generators(g, q, seed);
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::vector<SampleCodes> codes;
    double coding = 0.0;
    for (int it = 0; it < iters; ++it) {
      const auto start = std::chrono::steady_clock::now();
      code_all(g, gens, data, cfg, codes, threads);
      coding += timed_seconds(start);
      gens = update_generators(g, codes, data, gens).gens;
      normalize(g, gens, rng);
    }
    out.per_iteration.push_back(coding / static_cast<double>(iters));
  }
  return out;
}

}  // namespace gidl
