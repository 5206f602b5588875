// Copyright 2026 The gchar Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GCHAR_LINALG_HPP
#define GCHAR_LINALG_HPP

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace gchar {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using CMatrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Matrix or vector sizes are inconsistent (odd length, mode mismatch, ...).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A matrix that must be positive definite is not.
class DegenerateMatrixError : public Error {
 public:
  using Error::Error;
};

/// Empty or full mode subset passed where a bipartition is required.
class PartitionError : public Error {
 public:
  using Error::Error;
};

/// Invalid homodyne direction (e.g. all zero).
class SettingError : public Error {
 public:
  using Error::Error;
};

/// The sample catalog is missing settings; message lists the absent labels.
class MissingSettingError : public Error {
 public:
  using Error::Error;
};

/// A scalar parameter is outside its admissible range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Probe records are incomplete or duplicated.
class ProbeError : public Error {
 public:
  using Error::Error;
};

/// (M + Mᵀ)/2.
Matrix symmetrized(const Matrix& m);

/// Largest absolute entry; 0 for empty matrices.
double max_abs(const Matrix& m);

/// Largest |m(i,j) - m(j,i)|.
double max_asymmetry(const Matrix& m);

/// Smallest eigenvalue of the Hermitian matrix re + i·im.
///
/// `re` is symmetrized and `im` antisymmetrized before the solve so that
/// round-off asymmetry never produces complex eigenvalues.
double hermitian_min_eigenvalue(const Matrix& re, const Matrix& im);

/// Builds the Hermitian matrix re + i·im with the same symmetrization.
CMatrix hermitian_from_parts(const Matrix& re, const Matrix& im);

/// Flips each column so that its largest-magnitude entry is positive.
/// Ties within 1e-12 resolve to the lowest row index. Returns the applied
/// signs (+1/-1) so a paired factor can be adjusted.
Vector canonicalize_column_signs(Matrix& columns);

}  // namespace gchar

#endif  // GCHAR_LINALG_HPP
