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

#ifndef GIDL_ERRORS_HPP
#define GIDL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gidl {

/// Shapes or lengths that do not agree, or a value outside its domain.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A precondition on the numerical content of an input failed
/// (non-Hermitian, non-conjugate-symmetric, not PSD, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Non-finite iterates or objective values.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or unreadable input files.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace tol {
inline constexpr double kSymmetrize = 1e-12;
inline constexpr double kRoundTrip = 1e-10;
inline constexpr double kFactorization = 1e-9;
inline constexpr double kConjugateSymmetry = 1e-8;
inline constexpr double kUnitNorm = 1e-10;
inline constexpr double kPsdFeasible = 1e-8;
inline constexpr double kToeplitzFeasible = 1e-8;
inline constexpr double kRankRelative = 1e-7;
inline constexpr double kRidge = 1e-10;
}  // namespace tol

}  // namespace gidl

#endif  // GIDL_ERRORS_HPP
