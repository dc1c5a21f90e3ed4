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

#ifndef GIDL_GROUP_MODEL_HPP
#define GIDL_GROUP_MODEL_HPP

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gidl/numerics.hpp"

namespace gidl {

enum class GroupKind { Regular, IntShift, InterpShift, CtsShift, Orthogonal };

/// The invariance group acting on the data.
///
/// Vector groups act on signals of length `dim()`; the orthogonal group acts
/// by left multiplication on dim() x cols() matrices. Immutable once built.
class GroupModel {
 public:
  static GroupModel regular(Index d);
  static GroupModel int_shift(Index d);
  /// Shifts by integer multiples of 1/K samples. K = 1 is `int_shift`.
  static GroupModel interp_shift(Index d, int subdivisions);
  /// Continuous shifts by trigonometric interpolation; d must be odd.
  static GroupModel cts_shift(Index d);
  static GroupModel orthogonal(Index d, Index r);

  /// Parses `regular | intshift | interpshift:K | ctsshift | orth:DxR`.
  /// `signal_length` supplies d for the vector groups and is ignored by
  /// `orth:DxR`, which carries its own shape.
  static GroupModel parse(std::string_view text, Index signal_length);

  GroupKind kind() const { return kind_; }
  Index dim() const { return d_; }
  /// 1 for vector groups, r for the orthogonal group.
  Index cols() const { return r_; }
  int subdivisions() const { return k_; }
  /// (d - 1) / 2 for the continuous-shift group.
  Index d_half() const { return (d_ - 1) / 2; }
  /// Length of the ShiftCode vector: d for integer shifts, d*K interpolated.
  Index shift_code_length() const { return d_ * k_; }
  bool is_vector_group() const { return kind_ != GroupKind::Orthogonal; }
  bool is_shift_group() const {
    return kind_ == GroupKind::IntShift || kind_ == GroupKind::InterpShift;
  }
  /// Canonical textual form, accepted by `parse`.
  std::string name() const;

  friend bool operator==(const GroupModel&, const GroupModel&) = default;

 private:
  GroupModel(GroupKind kind, Index d, Index r, int k) : kind_(kind), d_(d), r_(r), k_(k) {}

  GroupKind kind_;
  Index d_;
  Index r_;
  int k_;
};

/// Coefficient of the scaled identity.
struct RegularCode {
  double c = 0.0;
};

/// First column of a circulant matrix (integer shifts), or coefficients of
/// the d*K interpolated shifts.
struct ShiftCode {
  Vec x;
};

/// First columns (z, bz) of the two PSD Hermitian Toeplitz certificates for
/// the positive and negative parts of a continuous-shift code.
struct CtsCode {
  double z_plus = 0.0;
  CVec bz_plus;
  double z_minus = 0.0;
  CVec bz_minus;

  CVec column_plus() const;
  CVec column_minus() const;
  /// Frequency-domain multiplier (bz_-^*, z, bz) of length 2d+1, positive
  /// certificate minus negative certificate.
  CVec multiplier() const;
};

struct OrthCode {
  Mat Z;
};

using CodingVariable = std::variant<RegularCode, ShiftCode, CtsCode, OrthCode>;

/// q generators: d x 1 columns for vector groups, d x r for the orthogonal
/// group. Unit norm after every normalization.
struct GeneratorSet {
  std::vector<Mat> atoms;

  std::size_t size() const { return atoms.size(); }
  const Mat& operator[](std::size_t j) const { return atoms[j]; }
  Mat& operator[](std::size_t j) { return atoms[j]; }
};

/// Parameter of a single group element: a sign for Regular, a shift index for
/// IntShift/InterpShift, a phase in [0,1) for CtsShift, an orthogonal matrix
/// for Orthogonal.
using GroupParameter = std::variant<Index, double, Mat>;

CodingVariable zero_code(const GroupModel& g);
/// Throws DimensionError when `z` has the wrong alternative or shape for `g`.
void check_code(const GroupModel& g, const CodingVariable& z);
void check_generator(const GroupModel& g, const Mat& a);

/// ||Z||_G. For CtsShift this is the certificate value z_+ + z_-, an upper
/// bound on the gauge that is tight at solver fixed points.
double atomic_norm(const GroupModel& g, const CodingVariable& z);

/// Z a.
Mat apply(const GroupModel& g, const CodingVariable& z, const Mat& a);

/// Gradient with respect to z of 1/2 ||residual - apply(g, z, a)||^2, i.e.
/// the negated adjoint of z -> apply(g, z, a) evaluated at `residual`.
/// For CtsShift the entries are the first-column slots of the Hermitian
/// certificate gradients; the lambda terms are left to the caller.
CodingVariable apply_adjoint(const GroupModel& g, const Mat& residual, const Mat& a);

/// Proximal map of tau * ||.||_G: soft thresholding for Regular and the shift
/// groups; for Orthogonal the largest singular value is shrunk by tau and the
/// others are clamped to the result. Not defined for CtsShift, which uses
/// projections instead.
CodingVariable prox(const GroupModel& g, const CodingVariable& z, double tau);

/// Dense matrix of a single group element.
Mat group_element(const GroupModel& g, const GroupParameter& p);
/// The coding variable that represents exactly the group element `p`.
CodingVariable element_code(const GroupModel& g, const GroupParameter& p);

/// Real inner product on coding variables. CtsShift codes are compared
/// through their first-column Hermitian embedding, so off-diagonal slots
/// count twice.
double inner_product(const CodingVariable& a, const CodingVariable& b);
CodingVariable axpy(double alpha, const CodingVariable& x, const CodingVariable& y);
CodingVariable scale(const CodingVariable& x, double alpha);

/// v(phi) = (1, e^{2 pi i phi}, ..., e^{2 pi i n phi}) of length n + 1.
CVec phase_vector(double phi, Index n);

namespace detail {
/// Centred frequency of FFT bin k for a length-d transform.
Index centred_frequency(Index k, Index d);
/// FFT-domain multiplier of the (interpolated) shift code `x` on length-d
/// signals with K subdivisions per sample.
CVec shift_multiplier(const Vec& x, Index d, int subdivisions);
/// Adjoint of x -> ifft(shift_multiplier(x) .* A): given the cross spectrum
/// w_k = A_k conj(R_k), returns the length d*K coefficient gradient
/// (1/d) Re sum_k w_k e^{-2 pi i kappa_k s / (dK)}.
Vec shift_adjoint(const CVec& cross, Index d, int subdivisions);
}  // namespace detail

}  // namespace gidl

#endif  // GIDL_GROUP_MODEL_HPP
