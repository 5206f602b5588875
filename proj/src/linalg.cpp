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

#include "gchar/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace gchar {

Matrix symmetrized(const Matrix& m) { return 0.5 * (m + m.transpose()); }

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double max_asymmetry(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw DimensionError("max_asymmetry: matrix is not square");
  }
  return max_abs(m - m.transpose());
}

CMatrix hermitian_from_parts(const Matrix& re, const Matrix& im) {
  if (re.rows() != im.rows() || re.cols() != im.cols() ||
      re.rows() != re.cols()) {
    throw DimensionError("hermitian_from_parts: shape mismatch");
  }
  CMatrix h(re.rows(), re.cols());
  h.real() = symmetrized(re);
  h.imag() = 0.5 * (im - im.transpose());
  return h;
}

double hermitian_min_eigenvalue(const Matrix& re, const Matrix& im) {
  const CMatrix h = hermitian_from_parts(re, im);
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

Vector canonicalize_column_signs(Matrix& columns) {
  Vector signs = Vector::Ones(columns.cols());
  for (Eigen::Index c = 0; c < columns.cols(); ++c) {
    Eigen::Index best = 0;
    double best_abs = -1.0;
    for (Eigen::Index r = 0; r < columns.rows(); ++r) {
      const double a = std::abs(columns(r, c));
      if (a > best_abs + 1e-12) {
        best_abs = a;
        best = r;
      }
    }
    if (columns.rows() > 0 && columns(best, c) < 0.0) {
      columns.col(c) *= -1.0;
      signs(c) = -1.0;
    }
  }
  return signs;
}

}  // namespace gchar
