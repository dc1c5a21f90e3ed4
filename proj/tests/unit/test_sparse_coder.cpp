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


#include <doctest.h>

#include <cmath>
#include <random>

#include "gidl/sparse_coder.hpp"
#include "gidl/toeplitz.hpp"
#include "lp_oracle.hpp"

using namespace gidl;

namespace {

std::mt19937_64& rng() {
  static std::mt19937_64 engine(30);
  return engine;
}

double gauss() {
  static std::normal_distribution<double> normal;
  return normal(rng());
}

Mat random_mat(Index r, Index c) { return Mat::NullaryExpr(r, c, [] { return gauss(); }); }

GeneratorSet unit_generators(const GroupModel& g, int q) {
  GeneratorSet gens;
  for (int j = 0; j < q; ++j) {
    Mat a = random_mat(g.dim(), g.cols());
    gens.atoms.push_back(a / a.norm());
  }
  return gens;
}

std::vector<GroupModel> all_groups() {
  return {GroupModel::regular(6), GroupModel::int_shift(6), GroupModel::interp_shift(6, 2), GroupModel::cts_shift(7),
          GroupModel::orthogonal(3, 4)};
}

CodingVariable random_code(const GroupModel& g) {
  switch (g.kind()) {
    case GroupKind::Regular: return RegularCode{gauss()};
    case GroupKind::IntShift:
    case GroupKind::InterpShift: return ShiftCode{random_mat(g.shift_code_length(), 1).col(0)};
    case GroupKind::CtsShift: {
      // a feasible certificate pair: sums of rank-one atoms
      std::uniform_real_distribution<double> unif(0.0, 1.0);
      CodingVariable z = scale(element_code(g, unif(rng())), std::abs(gauss()));
      z = axpy(-std::abs(gauss()), element_code(g, unif(rng())), z);
      CtsCode c = std::get<CtsCode>(z);
      // axpy with a negative weight lands on the plus side; move it over
      const CtsCode neg = std::get<CtsCode>(scale(element_code(g, unif(rng())), std::abs(gauss())));
      c.z_minus = neg.z_plus;
      c.bz_minus = neg.bz_plus;
      c.z_plus = std::abs(c.z_plus) + 1.0;
      return c;
    }
    case GroupKind::Orthogonal: return OrthCode{random_mat(g.dim(), g.dim())};
  }
  return RegularCode{};
}

// Dense matrix Z of a compact code.
Mat dense_operator(const GroupModel& g, const CodingVariable& z) {
  const Index d = g.dim();
  switch (g.kind()) {
    case GroupKind::Regular: return std::get<RegularCode>(z).c * Mat::Identity(d, d);
    case GroupKind::IntShift:
    case GroupKind::InterpShift: {
      const Vec& x = std::get<ShiftCode>(z).x;
      Mat out = Mat::Zero(d, d);
      for (Index r = 0; r < x.size(); ++r) out += x(r) * group_element(g, r);
      return out;
    }
    case GroupKind::CtsShift: {
      const CMat f = FourierBasis(g.d_half()).matrix();
      const CMat dense = f.adjoint() * std::get<CtsCode>(z).multiplier().asDiagonal() * f;
      return dense.real();
    }
    case GroupKind::Orthogonal: return std::get<OrthCode>(z).Z;
  }
  return {};
}

}  // namespace

TEST_CASE("solver config validation") {
  SolverConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.lambda = 0.0;
  CHECK_THROWS_AS(cfg.validate(), PreconditionError);
  cfg = SolverConfig{};
  cfg.line_search.beta = 1.0;
  CHECK_THROWS_AS(cfg.validate(), PreconditionError);
  cfg = SolverConfig{};
  cfg.line_search.c = 0.0;
  CHECK_THROWS_AS(cfg.validate(), PreconditionError);
  cfg = SolverConfig{};
  cfg.dykstra_inner_iters = 0;
  CHECK_THROWS_AS(cfg.validate(), PreconditionError);
  CHECK(SolverConfig{}.max_iters == 5);
  CHECK(SolverConfig{}.dykstra_inner_iters == 1);
}

TEST_CASE("objective examples") {
  const GroupModel g = GroupModel::regular(5);
  const GeneratorSet gens = unit_generators(g, 2);
  const Mat y = random_mat(5, 1);
  CHECK(objective(g, gens, y, {zero_code(g), zero_code(g)}, 0.3) == doctest::Approx(0.5 * y.squaredNorm()));
  CHECK(objective(g, gens, gens[0], {RegularCode{1.0}, RegularCode{0.0}}, 0.3) == doctest::Approx(0.3));
}

TEST_CASE("objective matches dense assembly") {
  for (const GroupModel& g : all_groups()) {
    for (int t = 0; t < 10; ++t) {
      const GeneratorSet gens = unit_generators(g, 2);
      const Mat y = random_mat(g.dim(), g.cols());
      const std::vector<CodingVariable> codes = {random_code(g), random_code(g)};
      Mat fit = Mat::Zero(g.dim(), g.cols());
      double norm = 0.0;
      for (int j = 0; j < 2; ++j) {
        fit += dense_operator(g, codes[j]) * gens[j];
        norm += atomic_norm(g, codes[j]);
      }
      const double expected = 0.5 * (y - fit).squaredNorm() + 0.2 * norm;
      CHECK(objective(g, gens, y, codes, 0.2) == doctest::Approx(expected).epsilon(1e-9));
    }
  }
}

TEST_CASE("a generator codes to itself with soft-threshold shrinkage") {
  const GroupModel g = GroupModel::regular(8);
  const GeneratorSet gens = unit_generators(g, 3);
  SolverConfig cfg;
  cfg.lambda = 0.01;
  cfg.max_iters = 500;
  const CodingResult r = code_sample(g, gens, gens[0], cfg);
  CHECK(std::get<RegularCode>(r.codes[0]).c == doctest::Approx(1.0 - 0.01).epsilon(0.02));
  CHECK(std::abs(std::get<RegularCode>(r.codes[1]).c) <= 1e-6);
  CHECK(std::abs(std::get<RegularCode>(r.codes[2]).c) <= 1e-6);
}

TEST_CASE("zero signal gives zero codes") {
  for (const GroupModel& g : all_groups()) {
    const GeneratorSet gens = unit_generators(g, 2);
    const CodingResult r = code_sample(g, gens, Mat::Zero(g.dim(), g.cols()), SolverConfig{});
    CHECK(r.objective == 0.0);
    for (const auto& z : r.codes) CHECK(atomic_norm(g, z) == 0.0);
  }
}

TEST_CASE("a shifted generator is found at its shift") {
  const Index d = 8;
  const GroupModel g = GroupModel::int_shift(d);
  for (Index r : {Index(0), Index(3), Index(6)}) {
    const GeneratorSet gens = unit_generators(g, 1);
    const Vec y = group_element(g, r) * gens[0];
    SolverConfig cfg;
    cfg.lambda = 0.01;
    cfg.max_iters = 50;
    const CodingResult res = code_sample(g, gens, y, cfg);
    CHECK((res.fit - y).norm() <= 0.05);
    Index top = 0;
    std::get<ShiftCode>(res.codes[0]).x.cwiseAbs().maxCoeff(&top);
    // the equality-constrained l1 problem over all shifts picks the same one
    Mat shifts(d, d);
    for (Index k = 0; k < d; ++k) shifts.col(k) = group_element(g, k) * gens[0];
    const auto lp = testing::solve_l1(shifts, y);
    REQUIRE(lp.feasible);
    Index lp_top = 0;
    lp.x.cwiseAbs().maxCoeff(&lp_top);
    CHECK(top == r);
    CHECK(lp_top == r);
  }
}

TEST_CASE("shape and value errors") {
  const GroupModel g = GroupModel::int_shift(4);
  const GeneratorSet gens = unit_generators(g, 1);
  CHECK_THROWS_AS(code_sample(g, gens, Mat::Zero(5, 1), SolverConfig{}), DimensionError);
  Mat bad = Mat::Zero(4, 1);
  bad(2, 0) = std::nan("");
  CHECK_THROWS_AS(code_sample(g, gens, bad, SolverConfig{}), NumericalError);
  SolverConfig zero;
  zero.lambda = 0.0;
  CHECK_THROWS_AS(denoise(g, gens, Mat::Zero(4, 1), zero), PreconditionError);
  GeneratorSet wrong;
  wrong.atoms.push_back(Mat::Zero(3, 1));
  CHECK_THROWS_AS(code_sample(g, wrong, Mat::Zero(4, 1), SolverConfig{}), DimensionError);
}

TEST_CASE("huge lambda denoises to zero") {
  for (const GroupModel& g : all_groups()) {
    const GeneratorSet gens = unit_generators(g, 2);
    SolverConfig cfg;
    cfg.lambda = 1e6;
    CHECK(denoise(g, gens, random_mat(g.dim(), g.cols()), cfg).norm() == 0.0);
  }
}

TEST_CASE("denoising a noisy shifted atom moves toward the clean atom") {
  const Index d = 16;
  const GroupModel g = GroupModel::int_shift(d);
  std::mt19937_64 local(31);
  std::normal_distribution<double> normal;
  std::uniform_int_distribution<Index> shift(0, d - 1);
  SolverConfig cfg;
  cfg.lambda = 0.1;
  cfg.max_iters = 50;
  int better = 0;
  for (int t = 0; t < 100; ++t) {
    GeneratorSet gens;
    Vec a = Vec::NullaryExpr(d, [&] { return normal(local); });
    gens.atoms.push_back(a / a.norm());
    const Vec clean = group_element(g, shift(local)) * gens[0];
    const Vec y = clean + 0.1 * Vec::NullaryExpr(d, [&] { return normal(local); });
    const Vec fit = denoise(g, gens, y, cfg);
    better += (fit - clean).norm() < (y - clean).norm();
  }
  CHECK(better >= 90);
}

TEST_CASE("accepted iterations never increase the objective") {
  for (const GroupModel& g : all_groups()) {
    for (int t = 0; t < 50; ++t) {
      const GeneratorSet gens = unit_generators(g, 2);
      const Mat y = random_mat(g.dim(), g.cols());
      SolverConfig cfg;
      cfg.lambda = 0.05 + 0.1 * (t % 5);
      cfg.max_iters = 20;
      const CodingResult r = code_sample(g, gens, y, cfg);
      for (std::size_t k = 1; k < r.history.size(); ++k) CHECK(r.history[k] <= r.history[k - 1] + 1e-12);
      CHECK(std::isfinite(r.objective));
    }
  }
}

TEST_CASE("smooth gradient matches finite differences") {
  const double h = 1e-6;
  for (const GroupModel& g : all_groups()) {
    for (int t = 0; t < 20; ++t) {
      const GeneratorSet gens = unit_generators(g, 2);
      const Mat y = random_mat(g.dim(), g.cols());
      const std::vector<CodingVariable> z = {random_code(g), random_code(g)};
      const std::vector<CodingVariable> dir = {random_code(g), random_code(g)};
      const auto grad = smooth_gradient(g, gens, y, z);
      auto f = [&](double s) {
        return objective(g, gens, y, {axpy(s, dir[0], z[0]), axpy(s, dir[1], z[1])}, 0.0);
      };
      const double fd = (f(h) - f(-h)) / (2.0 * h);
      const double analytic = inner_product(grad[0], dir[0]) + inner_product(grad[1], dir[1]);
      CHECK(std::abs(fd - analytic) <= 1e-5 * std::max(std::abs(analytic), 1e-3));
    }
  }
}

TEST_CASE("lasso solutions are fixed points") {
  for (const GroupModel& g : {GroupModel::regular(6), GroupModel::int_shift(6)}) {
    for (int t = 0; t < 10; ++t) {
      const GeneratorSet gens = unit_generators(g, 2);
      const Mat y = random_mat(g.dim(), 1);
      SolverConfig cfg;
      cfg.lambda = 0.2;
      cfg.max_iters = 50000;
      const CodingResult r = code_sample(g, gens, y, cfg);
      // optimality of the l1 problem, checked coordinate by coordinate
      const auto grad = smooth_gradient(g, gens, y, r.codes);
      for (int j = 0; j < 2; ++j) {
        Vec x, gj;
        if (g.kind() == GroupKind::Regular) {
          x = Vec::Constant(1, std::get<RegularCode>(r.codes[j]).c);
          gj = Vec::Constant(1, std::get<RegularCode>(grad[j]).c);
        } else {
          x = std::get<ShiftCode>(r.codes[j]).x;
          gj = std::get<ShiftCode>(grad[j]).x;
        }
        for (Index k = 0; k < x.size(); ++k) {
          if (x(k) != 0.0) {
            CHECK(gj(k) == doctest::Approx(-cfg.lambda * (x(k) > 0 ? 1.0 : -1.0)).epsilon(1e-6));
          } else {
            CHECK(std::abs(gj(k)) <= cfg.lambda + 1e-6);
          }
        }
      }
      SolverConfig one = cfg;
      one.max_iters = 1;
      const CodingResult again = code_sample(g, gens, y, one, &r.codes);
      CHECK(std::abs(again.objective - r.objective) <= 1e-8);
    }
  }
}

TEST_CASE("ctsshift certificates stay PSD Toeplitz") {
  const GroupModel g = GroupModel::cts_shift(9);
  for (int t = 0; t < 10; ++t) {
    const GeneratorSet gens = unit_generators(g, 2);
    const Mat y = random_mat(9, 1);
    SolverConfig cfg;
    cfg.lambda = 0.05;
    cfg.max_iters = 1;
    std::vector<CodingVariable> codes;
    for (int it = 0; it < 15; ++it) {
      const CodingResult r = code_sample(g, gens, y, cfg, it == 0 ? nullptr : &codes);
      codes = r.codes;
      for (const auto& z : codes) {
        const CtsCode& c = std::get<CtsCode>(z);
        CHECK(min_eigenvalue(hermitian_toeplitz(c.column_plus())) >= -1e-8);
        CHECK(min_eigenvalue(hermitian_toeplitz(c.column_minus())) >= -1e-8);
      }
    }
  }
}

TEST_CASE("continuous shifts do at least as well as integer shifts on grid signals") {
  const Index d = 7;
  const GroupModel cts = GroupModel::cts_shift(d);
  const GroupModel ints = GroupModel::int_shift(d);
  for (int t = 0; t < 5; ++t) {
    const GeneratorSet gens = unit_generators(ints, 1);
    const Vec y = 1.2 * group_element(ints, Index(t % d)) * gens[0] - 0.7 * group_element(ints, Index((t + 3) % d)) * gens[0];
    SolverConfig cfg;
    cfg.lambda = 0.1;
    cfg.max_iters = 2000;
    // a single sweep is an inexact projection and can stall above the optimum
    cfg.dykstra_inner_iters = 50;
    const double f_int = code_sample(ints, gens, y, cfg).objective;
    const double f_cts = code_sample(cts, gens, y, cfg).objective;
    CHECK(f_cts <= f_int + 1e-6);
  }
}

TEST_CASE("masked objective ignores hidden entries") {
  const GroupModel g = GroupModel::int_shift(5);
  const GeneratorSet gens = unit_generators(g, 1);
  Mat y = random_mat(5, 1);
  Mat mask = Mat::Ones(5, 1);
  mask(1, 0) = 0.0;
  const std::vector<CodingVariable> codes = {zero_code(g)};
  const double before = objective(g, gens, y, codes, 0.1, &mask);
  y(1, 0) = 1e6;
  CHECK(objective(g, gens, y, codes, 0.1, &mask) == before);
}

TEST_CASE("continuation records one objective per stage") {
  const GroupModel g = GroupModel::int_shift(6);
  const GeneratorSet gens = unit_generators(g, 1);
  const CodingResult r = code_continuation(g, gens, random_mat(6, 1), SolverConfig{}, 4, 0.5);
  CHECK(r.history.size() == 4);
  CHECK_THROWS_AS(code_continuation(g, gens, random_mat(6, 1), SolverConfig{}, 0, 0.5), PreconditionError);
  CHECK_THROWS_AS(code_continuation(g, gens, random_mat(6, 1), SolverConfig{}, 2, 1.5), PreconditionError);
}
