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

#include "gidl/numerics.hpp"

using namespace gidl;

namespace {

Vec random_vec(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  return Vec::NullaryExpr(n, [&] { return normal(rng); });
}

CMat random_hermitian(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  CMat a = CMat::NullaryExpr(n, n, [&] { return cplx(normal(rng), normal(rng)); });
  return 0.5 * (a + a.adjoint());
}

}  // namespace

TEST_CASE("fourier basis is unitary") {
  for (Index d : {0, 1, 2, 5, 10}) {
    const CMat f = FourierBasis(d).matrix();
    CHECK((f.adjoint() * f - CMat::Identity(f.rows(), f.cols())).norm() <= 1e-10);
  }
}

TEST_CASE("even lengths are rejected") {
  CHECK_THROWS_AS(FourierBasis::for_length(4), DimensionError);
  CHECK_THROWS_AS(FourierBasis::for_length(0), DimensionError);
  CHECK_THROWS_AS(dft_forward(Vec::Zero(4), FourierBasis(2)), DimensionError);
  CHECK_THROWS_AS(dft_forward(Vec::Zero(3), FourierBasis(2)), DimensionError);
  CHECK(FourierBasis::for_length(7).d_half() == 3);
}

TEST_CASE("dft_forward of an impulse is flat") {
  const FourierBasis b(1);
  const CVec f = dft_forward(Vec::Unit(3, 0), b);
  for (Index k = 0; k < 3; ++k) CHECK(std::abs(f(k) - cplx(1.0 / std::sqrt(3.0), 0.0)) <= 1e-12);
  CHECK(dft_forward(Vec::Zero(3), b).norm() == 0.0);
}

TEST_CASE("dft_forward matches the dense matrix and is conjugate symmetric") {
  std::mt19937_64 rng(1);
  for (Index d : {1, 3, 8}) {
    const FourierBasis b(d);
    const Vec x = random_vec(b.length(), rng);
    const CVec f = dft_forward(x, b);
    CHECK((f - b.matrix() * x.cast<cplx>()).norm() <= 1e-10);
    CHECK(is_conjugate_symmetric(f));
    CHECK(std::abs(f.norm() - x.norm()) <= 1e-10);
  }
}

TEST_CASE("dft round trip") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 20; ++t) {
    const FourierBasis b(1 + t % 6);
    const Vec x = random_vec(b.length(), rng);
    CHECK((dft_inverse(dft_forward(x, b), b) - x).norm() <= 1e-10);
  }
}

TEST_CASE("dft_inverse of a flat spectrum is a scaled impulse") {
  const FourierBasis b(2);
  const Vec x = dft_inverse(CVec::Ones(5), b);
  // F^H 1 = sqrt(5) e_0, consistent with F e_0 = 1 / sqrt(5)
  Vec expected = Vec::Zero(5);
  expected(0) = std::sqrt(5.0);
  CHECK((x - expected).norm() <= 1e-12);
}

TEST_CASE("dft_inverse rejects spectra that are not conjugate symmetric") {
  const FourierBasis b(2);
  CVec f = dft_forward(Vec::LinSpaced(5, 0.0, 1.0), b);
  f(4) += cplx(1e-3, 0.0);
  CHECK_THROWS_AS(dft_inverse(f, b), PreconditionError);
  CHECK_THROWS_AS(dft_inverse(CVec::Ones(3), b), DimensionError);
}

TEST_CASE("circular convolution identities") {
  std::mt19937_64 rng(3);
  const Vec a = random_vec(7, rng);
  CHECK((circular_convolve(a, Vec::Unit(7, 0)) - a).norm() <= 1e-12);
  for (Index r = 0; r < 7; ++r) {
    const Vec shifted = circular_convolve(a, Vec::Unit(7, r));
    for (Index n = 0; n < 7; ++n) CHECK(shifted(n) == doctest::Approx(a(((n - r) % 7 + 7) % 7)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(circular_convolve(a, Vec::Zero(6)), DimensionError);
}

TEST_CASE("small convolution against the double sum") {
  const Vec a = (Vec(3) << 1, 2, 3).finished();
  const Vec x = (Vec(3) << 1, 0, 1).finished();
  Vec brute = Vec::Zero(3);
  for (Index i = 0; i < 3; ++i) {
    for (Index k = 0; k < 3; ++k) brute(i) += a(k) * x(((i - k) % 3 + 3) % 3);
  }
  CHECK((circular_convolve(a, x) - brute).norm() <= 1e-12);
  CHECK((circular_convolve_direct(a, x) - brute).norm() <= 1e-12);
  // (3, 5, 4): not the constant vector
  CHECK(brute(0) == 3.0);
  CHECK(brute(1) == 5.0);
  CHECK(brute(2) == 4.0);
}

TEST_CASE("convolution equals the circulant matrix product") {
  std::mt19937_64 rng(4);
  for (Index d : {1, 2, 5, 16, 31}) {
    const Vec a = random_vec(d, rng);
    const Vec x = random_vec(d, rng);
    Mat c(d, d);
    for (Index i = 0; i < d; ++i) {
      for (Index j = 0; j < d; ++j) c(i, j) = x(((i - j) % d + d) % d);
    }
    CHECK((circular_convolve(a, x) - c * a).norm() <= 1e-10 * (1.0 + (c * a).norm()));
    CHECK((circular_convolve_direct(a, x) - c * a).norm() <= 1e-10 * (1.0 + (c * a).norm()));
  }
}

TEST_CASE("convolution theorem in the unitary basis") {
  std::mt19937_64 rng(5);
  const FourierBasis b(6);
  const Vec a = random_vec(13, rng);
  const Vec x = random_vec(13, rng);
  const CVec lhs = dft_forward(circular_convolve(a, x), b);
  const CVec rhs = std::sqrt(13.0) * dft_forward(a, b).cwiseProduct(dft_forward(x, b));
  CHECK((lhs - rhs).norm() <= 1e-9);
}

TEST_CASE("correlation is the adjoint of convolution") {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 20; ++t) {
    const Index d = 2 + t;
    const Vec a = random_vec(d, rng);
    const Vec x = random_vec(d, rng);
    const Vec r = random_vec(d, rng);
    CHECK(circular_convolve(a, x).dot(r) == doctest::Approx(x.dot(circular_correlate(a, r))).epsilon(1e-10));
  }
}

TEST_CASE("hermitian_eig examples") {
  const HermitianEigen id = hermitian_eig(HermitianMatrix(CMat::Identity(3, 3)));
  CHECK((id.values - Vec::Ones(3)).norm() <= 1e-14);
  CMat m = CMat::Zero(2, 2);
  m(0, 0) = 2.0;
  m(1, 1) = -1.0;
  const HermitianEigen e = hermitian_eig(HermitianMatrix(m));
  CHECK(e.values(0) == doctest::Approx(2.0));
  CHECK(e.values(1) == doctest::Approx(-1.0));
}

TEST_CASE("hermitian_eig reconstruction on random inputs") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 100; ++t) {
    const Index n = 1 + t % 9;
    const CMat x = random_hermitian(n, rng);
    const HermitianEigen e = hermitian_eig(HermitianMatrix(x));
    const CMat rec = e.vectors * e.values.cast<cplx>().asDiagonal() * e.vectors.adjoint();
    CHECK((rec - x).norm() <= 1e-9 * x.norm());
    for (Index i = 0; i + 1 < n; ++i) CHECK(e.values(i) >= e.values(i + 1));
  }
}

TEST_CASE("checked construction rejects non-hermitian matrices") {
  CMat m = CMat::Zero(2, 2);
  m(0, 1) = 1.0;
  CHECK_THROWS_AS(HermitianMatrix::checked(m), PreconditionError);
  CHECK_THROWS_AS(HermitianMatrix(CMat::Zero(2, 3)), DimensionError);
  CMat bad = CMat::Identity(2, 2);
  bad(0, 0) = std::nan("");
  CHECK_THROWS_AS(hermitian_eig(HermitianMatrix(bad)), DimensionError);
}

TEST_CASE("svd examples and reconstruction") {
  const SvdResult id = svd(Mat::Identity(3, 3));
  CHECK((id.singular_values - Vec::Ones(3)).norm() <= 1e-14);
  Mat m = Mat::Zero(2, 2);
  m(0, 0) = 3.0;
  m(1, 1) = -2.0;
  const SvdResult s = svd(m);
  CHECK(s.singular_values(0) == doctest::Approx(3.0));
  CHECK(s.singular_values(1) == doctest::Approx(2.0));

  std::mt19937_64 rng(8);
  std::normal_distribution<double> normal;
  for (int t = 0; t < 100; ++t) {
    const Mat x = Mat::NullaryExpr(1 + t % 5, 1 + t % 7, [&] { return normal(rng); });
    const SvdResult r = svd(x);
    Mat sigma = Mat::Zero(x.rows(), x.cols());
    for (Index i = 0; i < r.singular_values.size(); ++i) sigma(i, i) = r.singular_values(i);
    CHECK((r.U * sigma * r.V.transpose() - x).norm() <= 1e-9 * std::max(1.0, x.norm()));
    for (Index i = 0; i + 1 < r.singular_values.size(); ++i) {
      CHECK(r.singular_values(i) >= r.singular_values(i + 1));
    }
    CHECK(r.singular_values.minCoeff() >= 0.0);
  }
  Mat bad = Mat::Identity(2, 2);
  bad(1, 0) = INFINITY;
  CHECK_THROWS_AS(svd(bad), DimensionError);
}
