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

#include "gidl/group_model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

namespace gidl {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Index parse_index(std::string_view s, std::string_view context) {
  Index value = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw DimensionError("group name: cannot parse integer in '" + std::string(context) + "'");
  }
  return value;
}

double soft_threshold(double v, double tau) {
  const double mag = std::abs(v) - tau;
  return mag > 0.0 ? std::copysign(mag, v) : 0.0;
}

const char* kind_label(GroupKind kind) {
  switch (kind) {
    case GroupKind::Regular: return "Regular";
    case GroupKind::IntShift: return "IntShift";
    case GroupKind::InterpShift: return "InterpShift";
    case GroupKind::CtsShift: return "CtsShift";
    case GroupKind::Orthogonal: return "Orthogonal";
  }
  return "?";
}

[[noreturn]] void kind_mismatch(const GroupModel& g) {
  throw DimensionError(std::string("coding variable does not match group ") + kind_label(g.kind()));
}

}  // namespace

GroupModel GroupModel::regular(Index d) {
  if (d < 1) throw DimensionError("regular group: d must be >= 1");
  return GroupModel(GroupKind::Regular, d, 1, 1);
}

GroupModel GroupModel::int_shift(Index d) {
  if (d < 1) throw DimensionError("intshift group: d must be >= 1");
  return GroupModel(GroupKind::IntShift, d, 1, 1);
}

GroupModel GroupModel::interp_shift(Index d, int subdivisions) {
  if (d < 1) throw DimensionError("interpshift group: d must be >= 1");
  if (subdivisions < 1) throw DimensionError("interpshift group: K must be >= 1");
  return GroupModel(GroupKind::InterpShift, d, 1, subdivisions);
}

GroupModel GroupModel::cts_shift(Index d) {
  if (d < 1 || d % 2 == 0) {
    throw DimensionError("ctsshift group: signal length must be odd, got " + std::to_string(d));
  }
  return GroupModel(GroupKind::CtsShift, d, 1, 1);
}

GroupModel GroupModel::orthogonal(Index d, Index r) {
  if (d < 1 || r < 1) throw DimensionError("orthogonal group: d and r must be >= 1");
  return GroupModel(GroupKind::Orthogonal, d, r, 1);
}

GroupModel GroupModel::parse(std::string_view text, Index signal_length) {
  if (text == "regular") return regular(signal_length);
  if (text == "intshift") return int_shift(signal_length);
  if (text == "ctsshift") return cts_shift(signal_length);
  if (text.starts_with("interpshift:")) {
    const Index k = parse_index(text.substr(12), text);
    return interp_shift(signal_length, static_cast<int>(k));
  }
  if (text.starts_with("orth:")) {
    const auto shape = text.substr(5);
    const auto x = shape.find('x');
    if (x == std::string_view::npos) throw DimensionError("group name: expected orth:DxR");
    return orthogonal(parse_index(shape.substr(0, x), text), parse_index(shape.substr(x + 1), text));
  }
  throw DimensionError("unknown group '" + std::string(text) +
                       "' (expected regular | intshift | interpshift:K | ctsshift | orth:DxR)");
}

std::string GroupModel::name() const {
  switch (kind_) {
    case GroupKind::Regular: return "regular";
    case GroupKind::IntShift: return "intshift";
    case GroupKind::InterpShift: return "interpshift:" + std::to_string(k_);
    case GroupKind::CtsShift: return "ctsshift";
    case GroupKind::Orthogonal: return "orth:" + std::to_string(d_) + "x" + std::to_string(r_);
  }
  return {};
}

CVec CtsCode::column_plus() const {
  CVec col(bz_plus.size() + 1);
  col(0) = z_plus;
  col.tail(bz_plus.size()) = bz_plus;
  return col;
}

CVec CtsCode::column_minus() const {
  CVec col(bz_minus.size() + 1);
  col(0) = z_minus;
  col.tail(bz_minus.size()) = bz_minus;
  return col;
}

CVec CtsCode::multiplier() const {
  const Index d = bz_plus.size();
  CVec c(2 * d + 1);
  c(d) = z_plus - z_minus;
  for (Index k = 1; k <= d; ++k) {
    const cplx v = bz_plus(k - 1) - bz_minus(k - 1);
    c(d + k) = v;
    c(d - k) = std::conj(v);
  }
  return c;
}

CodingVariable zero_code(const GroupModel& g) {
  switch (g.kind()) {
    case GroupKind::Regular: return RegularCode{};
    case GroupKind::IntShift:
    case GroupKind::InterpShift: return ShiftCode{Vec::Zero(g.shift_code_length())};
    case GroupKind::CtsShift: {
      const Index d = g.d_half();
      return CtsCode{0.0, CVec::Zero(d), 0.0, CVec::Zero(d)};
    }
    case GroupKind::Orthogonal: return OrthCode{Mat::Zero(g.dim(), g.dim())};
  }
  return RegularCode{};
}

void check_code(const GroupModel& g, const CodingVariable& z) {
  switch (g.kind()) {
    case GroupKind::Regular:
      if (!std::holds_alternative<RegularCode>(z)) kind_mismatch(g);
      return;
    case GroupKind::IntShift:
    case GroupKind::InterpShift: {
      const auto* s = std::get_if<ShiftCode>(&z);
      if (s == nullptr) kind_mismatch(g);
      if (s->x.size() != g.shift_code_length()) throw DimensionError("shift code has the wrong length");
      return;
    }
    case GroupKind::CtsShift: {
      const auto* c = std::get_if<CtsCode>(&z);
      if (c == nullptr) kind_mismatch(g);
      if (c->bz_plus.size() != g.d_half() || c->bz_minus.size() != g.d_half()) {
        throw DimensionError("ctsshift certificate has the wrong length");
      }
      return;
    }
    case GroupKind::Orthogonal: {
      const auto* o = std::get_if<OrthCode>(&z);
      if (o == nullptr) kind_mismatch(g);
      if (o->Z.rows() != g.dim() || o->Z.cols() != g.dim()) throw DimensionError("orthogonal code must be d x d");
      return;
    }
  }
}

void check_generator(const GroupModel& g, const Mat& a) {
  if (a.rows() != g.dim() || a.cols() != g.cols()) {
    throw DimensionError("generator shape " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                         " does not match group " + g.name());
  }
}

double atomic_norm(const GroupModel& g, const CodingVariable& z) {
  check_code(g, z);
  return std::visit(overloaded{
                        [](const RegularCode& c) { return std::abs(c.c); },
                        [](const ShiftCode& s) { return s.x.lpNorm<1>(); },
                        [](const CtsCode& c) { return c.z_plus + c.z_minus; },
                        [](const OrthCode& o) {
                          if (o.Z.size() == 0) return 0.0;
                          Eigen::JacobiSVD<Mat> svd(o.Z);
                          return svd.singularValues()(0);
                        },
                    },
                    z);
}

namespace detail {

Index centred_frequency(Index k, Index d) { return (2 * k <= d) ? k : k - d; }

CVec shift_multiplier(const Vec& x, Index d, int subdivisions) {
  if (subdivisions == 1) return fft(x);
  const Index n = d * subdivisions;
  const CVec big = fft(x);
  CVec m(d);
  for (Index k = 0; k < d; ++k) {
    const Index kappa = centred_frequency(k, d);
    m(k) = big(((kappa % n) + n) % n);
  }
  if (d % 2 == 0) m(d / 2) = m(d / 2).real();
  return m;
}

Vec shift_adjoint(const CVec& cross, Index d, int subdivisions) {
  const Index n = d * subdivisions;
  CVec padded = CVec::Zero(n);
  for (Index k = 0; k < d; ++k) {
    const Index kappa = centred_frequency(k, d);
    padded(((kappa % n) + n) % n) += cross(k);
  }
  return fft(padded).real() / static_cast<double>(d);
}

}  // namespace detail

Mat apply(const GroupModel& g, const CodingVariable& z, const Mat& a) {
  check_code(g, z);
  check_generator(g, a);
  switch (g.kind()) {
    case GroupKind::Regular: return std::get<RegularCode>(z).c * a;
    case GroupKind::IntShift: return circular_convolve(a.col(0), std::get<ShiftCode>(z).x);
    case GroupKind::InterpShift: {
      const CVec m = detail::shift_multiplier(std::get<ShiftCode>(z).x, g.dim(), g.subdivisions());
      return ifft_real(m.cwiseProduct(fft(Vec(a.col(0)))));
    }
    case GroupKind::CtsShift: {
      const FourierBasis basis(g.d_half());
      const CVec spectrum = dft_forward(a.col(0), basis);
      // the product of two conjugate-symmetric vectors is conjugate-symmetric
      return dft_inverse(std::get<CtsCode>(z).multiplier().cwiseProduct(spectrum), basis, 1e-6);
    }
    case GroupKind::Orthogonal: return std::get<OrthCode>(z).Z * a;
  }
  return {};
}

CodingVariable apply_adjoint(const GroupModel& g, const Mat& residual, const Mat& a) {
  check_generator(g, a);
  if (residual.rows() != a.rows() || residual.cols() != a.cols()) {
    throw DimensionError("apply_adjoint: residual shape does not match the generator");
  }
  switch (g.kind()) {
    case GroupKind::Regular: return RegularCode{-a.cwiseProduct(residual).sum()};
    case GroupKind::IntShift: return ShiftCode{-circular_correlate(a.col(0), residual.col(0))};
    case GroupKind::InterpShift: {
      const CVec cross = fft(Vec(a.col(0))).cwiseProduct(fft(Vec(residual.col(0))).conjugate());
      return ShiftCode{-detail::shift_adjoint(cross, g.dim(), g.subdivisions())};
    }
    case GroupKind::CtsShift: {
      const FourierBasis basis(g.d_half());
      const Index d = g.d_half();
      const CVec at = dft_forward(a.col(0), basis);
      const CVec rt = dft_forward(residual.col(0), basis);
      CtsCode grad{0.0, CVec(d), 0.0, CVec(d)};
      grad.z_plus = -(std::conj(at(d)) * rt(d)).real();
      for (Index k = 1; k <= d; ++k) grad.bz_plus(k - 1) = -std::conj(at(d + k)) * rt(d + k);
      grad.z_minus = -grad.z_plus;
      grad.bz_minus = -grad.bz_plus;
      return grad;
    }
    case GroupKind::Orthogonal: return OrthCode{-residual * a.transpose()};
  }
  return {};
}

CodingVariable prox(const GroupModel& g, const CodingVariable& z, double tau) {
  check_code(g, z);
  if (tau < 0.0) throw DimensionError("prox: tau must be nonnegative");
  switch (g.kind()) {
    case GroupKind::Regular: return RegularCode{soft_threshold(std::get<RegularCode>(z).c, tau)};
    case GroupKind::IntShift:
    case GroupKind::InterpShift: {
      const Vec& x = std::get<ShiftCode>(z).x;
      return ShiftCode{x.unaryExpr([tau](double v) { return soft_threshold(v, tau); })};
    }
    case GroupKind::CtsShift:
      throw DimensionError("prox is not defined for ctsshift; use the PSD Toeplitz projection");
    case GroupKind::Orthogonal: {
      const Mat& Z = std::get<OrthCode>(z).Z;
      const SvdResult s = svd(Z);
      Vec sv = s.singular_values;
      if (sv.size() == 0) return z;
      const double top = std::max(0.0, sv(0) - tau);
      for (Index i = 0; i < sv.size(); ++i) sv(i) = std::min(sv(i), top);
      return OrthCode{s.U.leftCols(sv.size()) * sv.asDiagonal() * s.V.leftCols(sv.size()).transpose()};
    }
  }
  return z;
}

CodingVariable element_code(const GroupModel& g, const GroupParameter& p) {
  switch (g.kind()) {
    case GroupKind::Regular: {
      const auto* sign = std::get_if<Index>(&p);
      if (sign == nullptr || (*sign != 1 && *sign != -1)) throw DimensionError("regular element: parameter must be +1 or -1");
      return RegularCode{static_cast<double>(*sign)};
    }
    case GroupKind::IntShift:
    case GroupKind::InterpShift: {
      const auto* r = std::get_if<Index>(&p);
      const Index n = g.shift_code_length();
      if (r == nullptr || *r < 0 || *r >= n) throw DimensionError("shift element: index out of range");
      Vec x = Vec::Zero(n);
      x(*r) = 1.0;
      return ShiftCode{x};
    }
    case GroupKind::CtsShift: {
      const auto* phi = std::get_if<double>(&p);
      if (phi == nullptr || !(*phi >= 0.0 && *phi < 1.0)) throw DimensionError("ctsshift element: phase must lie in [0,1)");
      const CVec v = phase_vector(*phi, g.d_half());
      return CtsCode{1.0, v.tail(g.d_half()), 0.0, CVec::Zero(g.d_half())};
    }
    case GroupKind::Orthogonal: {
      const auto* q = std::get_if<Mat>(&p);
      if (q == nullptr || q->rows() != g.dim() || q->cols() != g.dim()) {
        throw DimensionError("orthogonal element: expected a d x d matrix");
      }
      if (((q->transpose() * *q) - Mat::Identity(g.dim(), g.dim())).norm() > 1e-8) {
        throw DimensionError("orthogonal element: matrix is not orthogonal");
      }
      return OrthCode{*q};
    }
  }
  return RegularCode{};
}

Mat group_element(const GroupModel& g, const GroupParameter& p) {
  const CodingVariable code = element_code(g, p);
  if (g.kind() == GroupKind::Orthogonal) return std::get<OrthCode>(code).Z;
  if (g.kind() == GroupKind::CtsShift) {
    // F^H L(phi) F, built densely from the definition
    const FourierBasis basis(g.d_half());
    const CMat f = basis.matrix();
    const CVec l = std::get<CtsCode>(code).multiplier();
    const CMat dense = f.adjoint() * l.asDiagonal() * f;
    if (dense.imag().cwiseAbs().maxCoeff() > 1e-9) throw NumericalError("ctsshift element is not real");
    return dense.real();
  }
  const Index d = g.dim();
  Mat out(d, d);
  for (Index col = 0; col < d; ++col) out.col(col) = apply(g, code, Vec::Unit(d, col));
  return out;
}

double inner_product(const CodingVariable& a, const CodingVariable& b) {
  if (a.index() != b.index()) throw DimensionError("inner_product: coding variables of different kinds");
  return std::visit(
      overloaded{
          [&](const RegularCode& x) { return x.c * std::get<RegularCode>(b).c; },
          [&](const ShiftCode& x) {
            const auto& y = std::get<ShiftCode>(b);
            if (x.x.size() != y.x.size()) throw DimensionError("inner_product: length mismatch");
            return x.x.dot(y.x);
          },
          [&](const CtsCode& x) {
            const auto& y = std::get<CtsCode>(b);
            if (x.bz_plus.size() != y.bz_plus.size()) throw DimensionError("inner_product: length mismatch");
            return x.z_plus * y.z_plus + x.z_minus * y.z_minus +
                   2.0 * (x.bz_plus.conjugate().cwiseProduct(y.bz_plus).real().sum() +
                          x.bz_minus.conjugate().cwiseProduct(y.bz_minus).real().sum());
          },
          [&](const OrthCode& x) {
            const auto& y = std::get<OrthCode>(b);
            if (x.Z.rows() != y.Z.rows() || x.Z.cols() != y.Z.cols()) throw DimensionError("inner_product: shape mismatch");
            return x.Z.cwiseProduct(y.Z).sum();
          },
      },
      a);
}

CodingVariable axpy(double alpha, const CodingVariable& x, const CodingVariable& y) {
  if (x.index() != y.index()) throw DimensionError("axpy: coding variables of different kinds");
  return std::visit(overloaded{
                        [&](const RegularCode& v) -> CodingVariable {
                          return RegularCode{alpha * v.c + std::get<RegularCode>(y).c};
                        },
                        [&](const ShiftCode& v) -> CodingVariable {
                          return ShiftCode{alpha * v.x + std::get<ShiftCode>(y).x};
                        },
                        [&](const CtsCode& v) -> CodingVariable {
                          const auto& w = std::get<CtsCode>(y);
                          return CtsCode{alpha * v.z_plus + w.z_plus, alpha * v.bz_plus + w.bz_plus,
                                         alpha * v.z_minus + w.z_minus, alpha * v.bz_minus + w.bz_minus};
                        },
                        [&](const OrthCode& v) -> CodingVariable {
                          return OrthCode{alpha * v.Z + std::get<OrthCode>(y).Z};
                        },
                    },
                    x);
}

CodingVariable scale(const CodingVariable& x, double alpha) {
  return std::visit(overloaded{
                        [&](const RegularCode& v) -> CodingVariable { return RegularCode{alpha * v.c}; },
                        [&](const ShiftCode& v) -> CodingVariable { return ShiftCode{alpha * v.x}; },
                        [&](const CtsCode& v) -> CodingVariable {
                          // a negative scale swaps the roles of the two certificates
                          if (alpha >= 0.0) {
                            return CtsCode{alpha * v.z_plus, alpha * v.bz_plus, alpha * v.z_minus, alpha * v.bz_minus};
                          }
                          const double s = -alpha;
                          return CtsCode{s * v.z_minus, s * v.bz_minus, s * v.z_plus, s * v.bz_plus};
                        },
                        [&](const OrthCode& v) -> CodingVariable { return OrthCode{alpha * v.Z}; },
                    },
                    x);
}

CVec phase_vector(double phi, Index n) {
  CVec v(n + 1);
  for (Index k = 0; k <= n; ++k) {
    // reduce k*phi mod 1 first so large k keep full phase accuracy
    const double t = std::fmod(static_cast<double>(k) * phi, 1.0);
    v(k) = std::polar(1.0, kTwoPi * t);
  }
  return v;
}

}  // namespace gidl
