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


#include "gidl/sparse_coder.hpp"

#include <cmath>
#include <string>

#include "gidl/toeplitz.hpp"

namespace gidl {

namespace {

void check_inputs(const GroupModel& g, const GeneratorSet& gens, const Mat& y, const Mat* mask) {
  if (gens.size() == 0) throw DimensionError("no generators");
  for (const Mat& a : gens.atoms) check_generator(g, a);
  if (y.rows() != g.dim() || y.cols() != g.cols()) {
    throw DimensionError("sample shape " + std::to_string(y.rows()) + "x" + std::to_string(y.cols()) +
                         " does not match group " + g.name());
  }
  if (mask != nullptr && (mask->rows() != y.rows() || mask->cols() != y.cols())) {
    throw DimensionError("mask shape does not match the sample");
  }
}

Mat masked_residual(const Mat& y, const Mat& fit, const Mat* mask) {
  Mat r = y - fit;
  if (mask != nullptr) r = r.cwiseProduct(*mask);
  return r;
}

double penalty(const GroupModel& g, const std::vector<CodingVariable>& codes) {
  double s = 0.0;
  for (const auto& z : codes) s += atomic_norm(g, z);
  return s;
}

// One certificate: gradient step on the Hermitian embedding of the first
// column, then projection onto PSD Toeplitz matrices.
void certificate_step(double& z0, CVec& bz, double g0, const CVec& gk, double eta, double lambda,
                      const SolverConfig& cfg) {
  const Index d = bz.size();
  CVec col(d + 1);
  col(0) = z0;
  col.tail(d) = bz;
  CMat x = hermitian_toeplitz(col).matrix();
  x(0, 0) -= eta * (g0 + lambda);
  for (Index k = 1; k <= d; ++k) {
    x(k, 0) -= eta * gk(k - 1);
    x(0, k) -= eta * std::conj(gk(k - 1));
  }
  const DykstraResult proj = project_psd_toeplitz(HermitianMatrix(x), cfg.dykstra_inner_iters, cfg.dykstra_eps);
  CVec t = proj.x.matrix().col(0);
  double diag = t(0).real();
  if (cfg.enforce_feasible) {
    t(0) = diag;
    const double lmin = min_eigenvalue(hermitian_toeplitz(t));
    if (lmin < 0.0) diag -= lmin;
  }
  z0 = diag;
  bz = t.tail(d);
}

CtsCode cts_step(const CtsCode& z, const CtsCode& grad, double eta, double lambda, const SolverConfig& cfg) {
  CtsCode out = z;
  certificate_step(out.z_plus, out.bz_plus, grad.z_plus, grad.bz_plus, eta, lambda, cfg);
  certificate_step(out.z_minus, out.bz_minus, grad.z_minus, grad.bz_minus, eta, lambda, cfg);
  return out;
}

std::vector<CodingVariable> trial_point(const GroupModel& g, const std::vector<CodingVariable>& z,
                                        const std::vector<CodingVariable>& grad, double eta,
                                        const SolverConfig& cfg) {
  std::vector<CodingVariable> out;
  out.reserve(z.size());
  for (std::size_t j = 0; j < z.size(); ++j) {
    if (g.kind() == GroupKind::CtsShift) {
      out.emplace_back(cts_step(std::get<CtsCode>(z[j]), std::get<CtsCode>(grad[j]), eta, cfg.lambda, cfg));
    } else {
      out.push_back(prox(g, axpy(-eta, grad[j], z[j]), eta * cfg.lambda));
    }
  }
  return out;
}

double squared_distance(const std::vector<CodingVariable>& a, const std::vector<CodingVariable>& b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const CodingVariable diff = axpy(-1.0, b[j], a[j]);
    s += inner_product(diff, diff);
  }
  return s;
}

}  // namespace

void SolverConfig::validate() const {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw PreconditionError("lambda must be positive and finite");
  if (max_iters < 0) throw PreconditionError("max_iters must be nonnegative");
  if (!(line_search.eta0 > 0.0)) throw PreconditionError("initial step must be positive");
  if (!(line_search.beta > 0.0 && line_search.beta < 1.0)) throw PreconditionError("backtrack factor must lie in (0,1)");
  if (!(line_search.c > 0.0 && line_search.c < 1.0)) throw PreconditionError("sufficient-decrease constant must lie in (0,1)");
  if (line_search.max_backtracks < 1) throw PreconditionError("max_backtracks must be >= 1");
  if (dykstra_inner_iters < 1) throw PreconditionError("dykstra_inner_iters must be >= 1");
  if (tolerance < 0.0) throw PreconditionError("tolerance must be nonnegative");
}

Mat reconstruct(const GroupModel& g, const GeneratorSet& gens, const std::vector<CodingVariable>& codes) {
  if (codes.size() != gens.size()) throw DimensionError("one code per generator is required");
  Mat fit = Mat::Zero(g.dim(), g.cols());
  for (std::size_t j = 0; j < codes.size(); ++j) fit += apply(g, codes[j], gens[j]);
  return fit;
}

double objective(const GroupModel& g, const GeneratorSet& gens, const Mat& y,
                 const std::vector<CodingVariable>& codes, double lambda, const Mat* mask) {
  check_inputs(g, gens, y, mask);
  const Mat r = masked_residual(y, reconstruct(g, gens, codes), mask);
  return 0.5 * r.squaredNorm() + lambda * penalty(g, codes);
}

std::vector<CodingVariable> smooth_gradient(const GroupModel& g, const GeneratorSet& gens, const Mat& y,
                                            const std::vector<CodingVariable>& codes, const Mat* mask) {
  check_inputs(g, gens, y, mask);
  const Mat r = masked_residual(y, reconstruct(g, gens, codes), mask);
  std::vector<CodingVariable> grad;
  grad.reserve(gens.size());
  for (std::size_t j = 0; j < gens.size(); ++j) grad.push_back(apply_adjoint(g, r, gens[j]));
  return grad;
}

CodingResult code_sample(const GroupModel& g, const GeneratorSet& gens, const Mat& y, const SolverConfig& cfg,
                         const std::vector<CodingVariable>* warm, const Mat* mask) {
  cfg.validate();
  check_inputs(g, gens, y, mask);
  if (!y.allFinite()) throw NumericalError("sample has non-finite entries");

  CodingResult res;
  if (warm != nullptr && cfg.warm_start && warm->size() == gens.size()) {
    for (const auto& z : *warm) check_code(g, z);
    res.codes = *warm;
  } else {
    res.codes.assign(gens.size(), zero_code(g));
  }

  // Averaging onto the Toeplitz band spreads a first-column step over up to
  // d+1 entries, so the continuous-shift step starts that much larger.
  const double eta_start =
      cfg.line_search.eta0 * (g.kind() == GroupKind::CtsShift ? static_cast<double>(g.d_half() + 1) : 1.0);

  double f = objective(g, gens, y, res.codes, cfg.lambda, mask);
  if (!std::isfinite(f)) throw NumericalError("non-finite objective at the initial point");
  res.history.push_back(f);

  for (int it = 0; it < cfg.max_iters; ++it) {
    const auto grad = smooth_gradient(g, gens, y, res.codes, mask);
    double eta = eta_start;
    bool accepted = false;
    std::vector<CodingVariable> next;
    double f_next = f;
    for (int bt = 0; bt < cfg.line_search.max_backtracks; ++bt, eta *= cfg.line_search.beta) {
      next = trial_point(g, res.codes, grad, eta, cfg);
      f_next = objective(g, gens, y, next, cfg.lambda, mask);
      if (!std::isfinite(f_next)) continue;
      if (f_next <= f - (cfg.line_search.c / eta) * squared_distance(next, res.codes)) {
        accepted = true;
        break;
      }
    }
    res.iterations = it + 1;
    if (!accepted) {
      // no decrease available at any tried step: treat as stationary
      res.converged = true;
      res.history.push_back(f);
      break;
    }
    const double change = f - f_next;
    res.codes = std::move(next);
    f = f_next;
    res.history.push_back(f);
    if (cfg.tolerance > 0.0 && change <= cfg.tolerance * std::max(1.0, std::abs(f))) {
      res.converged = true;
      break;
    }
  }
  res.objective = f;
  res.fit = reconstruct(g, gens, res.codes);
  if (!res.fit.allFinite()) throw NumericalError("non-finite fit");
  return res;
}

CodingResult code_continuation(const GroupModel& g, const GeneratorSet& gens, const Mat& y,
                               const SolverConfig& cfg, int stages, double factor, const Mat* mask) {
  if (stages < 1) throw PreconditionError("continuation needs at least one stage");
  if (!(factor > 0.0 && factor <= 1.0)) throw PreconditionError("continuation factor must lie in (0,1]");
  SolverConfig stage_cfg = cfg;
  stage_cfg.warm_start = true;
  CodingResult res;
  std::vector<double> history;
  for (int s = 0; s < stages; ++s) {
    res = code_sample(g, gens, y, stage_cfg, s == 0 ? nullptr : &res.codes, mask);
    history.push_back(res.objective);
    stage_cfg.lambda *= factor;
  }
  res.history = std::move(history);
  return res;
}

Mat denoise(const GroupModel& g, const GeneratorSet& gens, const Mat& y, const SolverConfig& cfg) {
  return code_sample(g, gens, y, cfg).fit;
}

}  // namespace gidl
